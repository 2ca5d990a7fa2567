//! Three-legged star construction for square groups `Z/t ⊕ Z/t`.
//!
//! `build_abc(a, b, c)` realises `Z/t ⊕ Z/t` with `t = ab + ac + bc + 1` on a
//! hub vertex `h` with three legs of lengths `a`, `b` and `c`.  Consecutive
//! leg vertices (and the hub with each first vertex) are joined by single
//! bundle pairs, while the three leg ends are joined pairwise by corner
//! bundles whose widths are the *opposite* leg lengths: `a` pairs between the
//! ends of legs `b` and `c`, and cyclically.  The sink is the hub.

use super::bundle::Bundle;
use super::{FamilyError, FamilyInstance};
use crate::digraph::MultiDigraph;
use crate::surface::{EmbeddedDigraph, End};
use crate::zlinalg::group_from_cyclic_orders;
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// One leg of the star: its vertex labels, the bundles along it (hub first),
/// and its two incident corner bundles.
struct Leg {
    labels: Vec<String>,
    path: Vec<Bundle>,
}

fn leg_labels(prefix: char, len: u64) -> Vec<String> {
    (1..=len).map(|j| format!("{prefix}{j}")).collect()
}

/// Builds the star realising `Z/t ⊕ Z/t`, `t = ab + ac + bc + 1`.
///
/// Requires `1 ≤ a ≤ b ≤ c`.
pub fn build_abc(a: u64, b: u64, c: u64) -> Result<FamilyInstance, FamilyError> {
    if a < 1 {
        return Err(FamilyError::InvalidParameter {
            name: "a",
            value: a.to_string(),
            requirement: "leg lengths must be at least 1",
        });
    }
    if !(a <= b && b <= c) {
        return Err(FamilyError::InvalidParameter {
            name: "(a, b, c)",
            value: format!("({a}, {b}, {c})"),
            requirement: "leg lengths must be sorted: a ≤ b ≤ c",
        });
    }

    let alpha = leg_labels('a', a);
    let beta = leg_labels('b', b);
    let gamma = leg_labels('c', c);
    let mut labels: Vec<&str> = Vec::new();
    labels.extend(gamma.iter().map(String::as_str));
    labels.extend(beta.iter().map(String::as_str));
    labels.extend(alpha.iter().map(String::as_str));
    labels.push("h");
    let mut d = MultiDigraph::new(labels)?;

    // Hub-to-leg bundle followed by the bundles along the leg.
    let add_leg = |d: &mut MultiDigraph, labels: &[String]| -> Result<Leg, FamilyError> {
        let mut path = vec![Bundle::add(d, "h", &labels[0], 1)?];
        for pair in labels.windows(2) {
            path.push(Bundle::add(d, &pair[0], &pair[1], 1)?);
        }
        Ok(Leg { labels: labels.to_vec(), path })
    };
    let leg_a = add_leg(&mut d, &alpha)?;
    let leg_b = add_leg(&mut d, &beta)?;
    let leg_c = add_leg(&mut d, &gamma)?;
    let end_a = leg_a.labels.last().unwrap().clone();
    let end_b = leg_b.labels.last().unwrap().clone();
    let end_c = leg_c.labels.last().unwrap().clone();
    let corner_a = Bundle::add(&mut d, &end_b, &end_c, a as usize)?;
    let corner_b = Bundle::add(&mut d, &end_c, &end_a, b as usize)?;
    let corner_c = Bundle::add(&mut d, &end_a, &end_b, c as usize)?;

    let mut rotations: BTreeMap<String, Vec<End>> = BTreeMap::new();

    // Hub: the u-sides of the three first bundles, in leg order.
    let mut ends = leg_a.path[0].u_side();
    ends.extend(leg_b.path[0].u_side());
    ends.extend(leg_c.path[0].u_side());
    rotations.insert("h".to_string(), ends);

    // Inner leg vertices: onward bundle's u-side, then inward bundle's v-side.
    // Leg ends: the two corner bundles wrap around the inward bundle.
    let mut add_leg_rotations = |leg: &Leg, out_corner: &Bundle, in_corner: &Bundle| {
        let len = leg.labels.len();
        for (j, label) in leg.labels.iter().enumerate() {
            let mut ends = Vec::new();
            if j + 1 < len {
                ends.extend(leg.path[j + 1].u_side());
                ends.extend(leg.path[j].v_side());
            } else {
                ends.extend(out_corner.u_side());
                ends.extend(leg.path[j].v_side());
                ends.extend(in_corner.v_side());
            }
            rotations.insert(label.clone(), ends);
        }
    };
    add_leg_rotations(&leg_a, &corner_c, &corner_b);
    add_leg_rotations(&leg_b, &corner_a, &corner_c);
    add_leg_rotations(&leg_c, &corner_b, &corner_a);

    let embedding = EmbeddedDigraph::new(d, rotations)?;
    let t = a * b + a * c + b * c + 1;
    let group = group_from_cyclic_orders([BigInt::from(t), BigInt::from(t)])?;
    Ok(FamilyInstance::new(format!("abc a={a} b={b} c={c}"), embedding, group))
}
