//! Parallel-arc bundles and their standard rotation blocks.
//!
//! A *bundle* between two vertices `u` and `v` consists of `t` forward arcs
//! `f_1, …, f_t : u → v` and `t` backward arcs `g_1, …, g_t : v → u`.  Every
//! family in this module attaches bundle ends in the same nested pattern: at
//! `u` the pairs appear in descending order `f_t, g_t, …, f_1, g_1`, while at
//! `v` they appear in ascending order `g_1, f_1, …, g_t, f_t`.  Opposite
//! nesting at the two endpoints is what makes a lone bundle (a fat dipole)
//! close up into a sphere: each forward arc bounds a digon with the next
//! backward arc on one side and with its own partner on the other.

use crate::digraph::{ArcId, DigraphError, MultiDigraph};
use crate::surface::{Dir, End};

/// Arc ids of one bundle, in slot order (`forward[j]` and `backward[j]` are
/// the two arcs of slot `j + 1`).
#[derive(Debug, Clone)]
pub(crate) struct Bundle {
    forward: Vec<ArcId>,
    backward: Vec<ArcId>,
}

impl Bundle {
    /// Adds a bundle of `t` arc pairs from `u` to `v` and returns the ids.
    pub(crate) fn add(
        digraph: &mut MultiDigraph,
        u: &str,
        v: &str,
        t: usize,
    ) -> Result<Self, DigraphError> {
        let mut forward = Vec::with_capacity(t);
        let mut backward = Vec::with_capacity(t);
        for _ in 0..t {
            forward.push(digraph.add_arc(u, v)?);
            backward.push(digraph.add_arc(v, u)?);
        }
        Ok(Bundle { forward, backward })
    }

    /// Rotation block at the tail-side vertex `u`:
    /// `f_t out, g_t in, …, f_1 out, g_1 in`.
    pub(crate) fn u_side(&self) -> Vec<End> {
        let mut ends = Vec::with_capacity(2 * self.forward.len());
        for j in (0..self.forward.len()).rev() {
            ends.push(End { arc: self.forward[j], dir: Dir::Out });
            ends.push(End { arc: self.backward[j], dir: Dir::In });
        }
        ends
    }

    /// Rotation block at the head-side vertex `v`:
    /// `g_1 out, f_1 in, …, g_t out, f_t in`.
    pub(crate) fn v_side(&self) -> Vec<End> {
        let mut ends = Vec::with_capacity(2 * self.forward.len());
        for j in 0..self.forward.len() {
            ends.push(End { arc: self.backward[j], dir: Dir::Out });
            ends.push(End { arc: self.forward[j], dir: Dir::In });
        }
        ends
    }
}
