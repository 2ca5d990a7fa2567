//! Exhaustive search for spherical directed rotation systems.
//!
//! A rotation whose faces are all directed must alternate in- and out-ends
//! around every vertex, so it is determined by two families of per-vertex
//! bijections: for each vertex, which out-end follows each in-end (the
//! forward-face successor) and which in-end follows each out-end (the
//! backward-face successor). The search assigns the two families in turn,
//! tracking partial face cycles, and accepts exactly when the face count
//! reaches the spherical total.

use std::collections::{BTreeMap, BTreeSet};

use crate::digraph::{DigraphError, MultiDigraph};
use crate::surface::embedding::{Dir, EmbeddedDigraph, End};
use crate::surface::SurfaceError;

/// Default ceiling on the arc count accepted by [`find_spherical_rotation`].
pub const DEFAULT_MAX_SEARCH_ARCS: usize = 24;

/// Looks for a rotation system of `d` with genus zero and every face
/// directed. Returns the first one in a deterministic assignment order, or
/// `None` when no such embedding exists. The digraph must be connected and
/// balanced; the search is exponential in the worst case, so digraphs with
/// more than `max_arcs` arcs are rejected up front.
pub fn find_spherical_rotation(
    d: &MultiDigraph,
    max_arcs: usize,
) -> Result<Option<EmbeddedDigraph>, SurfaceError> {
    if !d.is_connected() {
        return Err(SurfaceError::NotConnected);
    }
    for v in 0..d.vertex_count() {
        let (ind, outd) = (d.in_degree(v), d.out_degree(v));
        if ind != outd {
            return Err(SurfaceError::Digraph(DigraphError::NotEulerian {
                vertex: d.label(v).to_string(),
                in_degree: ind,
                out_degree: outd,
            }));
        }
    }
    if d.arc_count() == 0 {
        let empty = EmbeddedDigraph::new(d.clone(), BTreeMap::new()).expect("no ends to place");
        return Ok(Some(empty));
    }
    if d.arc_count() > max_arcs {
        return Err(SurfaceError::SearchBudgetExceeded {
            arcs: d.arc_count(),
            max_arcs,
        });
    }

    // Edge bounds on the simple underlying graph rule out many digraphs
    // without any search: a genus-zero embedding of the multigraph embeds
    // the simple graph in the plane.
    let n = d.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for a in d.arcs() {
        if a.tail != a.head {
            adj[a.tail].insert(a.head);
            adj[a.head].insert(a.tail);
        }
    }
    let simple_edges: usize = adj.iter().map(BTreeSet::len).sum::<usize>() / 2;
    if n >= 3 {
        if simple_edges > 3 * n - 6 {
            return Ok(None);
        }
        if (is_bipartite(&adj) || !has_triangle(&adj)) && simple_edges > 2 * n - 4 {
            return Ok(None);
        }
    }

    // Connectivity gives arcs >= n - 1, so the spherical face total is
    // positive; with at least one arc there is at least one forward and one
    // backward face, so a total below two is hopeless.
    let target = d.arc_count() + 2 - n;
    if target < 2 {
        return Ok(None);
    }
    Ok(Search::new(d, target).run())
}

fn is_bipartite(adj: &[BTreeSet<usize>]) -> bool {
    let n = adj.len();
    let mut color = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            let c = color[v].expect("queued vertices are colored");
            for &w in &adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push(w);
                    }
                    Some(cw) if cw == c => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

fn has_triangle(adj: &[BTreeSet<usize>]) -> bool {
    for (u, nu) in adj.iter().enumerate() {
        for &v in nu.iter().filter(|&&v| v > u) {
            if nu.intersection(&adj[v]).next().is_some() {
                return true;
            }
        }
    }
    false
}

/// Chain bookkeeping: `start[y]` is the chain start when `y` is currently a
/// chain end, `end[y]` the chain end when `y` is a start; singletons point
/// at themselves.
struct Chains {
    start: Vec<usize>,
    end: Vec<usize>,
}

impl Chains {
    fn new(n: usize) -> Self {
        Chains { start: (0..n).collect(), end: (0..n).collect() }
    }

    /// Would linking `from -> to` close the chain into a cycle?
    fn closes(&self, from: usize, to: usize) -> bool {
        self.start[from] == to
    }

    /// Links `from -> to` (a merge, not a closure); undo with `unlink`.
    fn link(&mut self, from: usize, to: usize) {
        let s = self.start[from];
        let t = self.end[to];
        self.end[s] = t;
        self.start[t] = s;
    }

    fn unlink(&mut self, from: usize, to: usize) {
        let s = self.start[from];
        let t = self.end[to];
        self.end[s] = from;
        self.start[t] = to;
    }
}

struct Search<'a> {
    d: &'a MultiDigraph,
    tail: Vec<usize>,
    head: Vec<usize>,
    out_at: Vec<Vec<usize>>,
    in_at: Vec<Vec<usize>>,
    arcs: usize,
    target: usize,
    // Forward-face successor per arc, and whether an arc is already some
    // arc's successor.
    sigma: Vec<Option<usize>>,
    sigma_used: Vec<bool>,
    sigma_chains: Chains,
    forward_faces: usize,
    // Backward-face successor, same layout.
    tau: Vec<Option<usize>>,
    tau_used: Vec<bool>,
    tau_chains: Chains,
    backward_faces: usize,
    // Rotation wheel per vertex: the composite out-arc successor must close
    // into a single cycle covering all out-arcs of the vertex.
    wheel_chains: Chains,
    wheel_links: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(d: &'a MultiDigraph, target: usize) -> Self {
        let arcs = d.arc_count();
        let n = d.vertex_count();
        let mut out_at: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut in_at: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut tail = Vec::with_capacity(arcs);
        let mut head = Vec::with_capacity(arcs);
        for (i, a) in d.arcs().iter().enumerate() {
            tail.push(a.tail);
            head.push(a.head);
            out_at[a.tail].push(i);
            in_at[a.head].push(i);
        }
        Search {
            d,
            tail,
            head,
            out_at,
            in_at,
            arcs,
            target,
            sigma: vec![None; arcs],
            sigma_used: vec![false; arcs],
            sigma_chains: Chains::new(arcs),
            forward_faces: 0,
            tau: vec![None; arcs],
            tau_used: vec![false; arcs],
            tau_chains: Chains::new(arcs),
            backward_faces: 0,
            wheel_chains: Chains::new(arcs),
            wheel_links: vec![0; n],
        }
    }

    fn run(&mut self) -> Option<EmbeddedDigraph> {
        self.assign_sigma(0)
    }

    /// Chooses the forward-face successor of each arc in turn: an unused
    /// out-arc at the arc's head. Complete forward faces may never exceed
    /// the spherical total minus one, since at least one backward face is
    /// still to come.
    fn assign_sigma(&mut self, a: usize) -> Option<EmbeddedDigraph> {
        if a == self.arcs {
            return self.assign_tau(0);
        }
        let candidates = self.out_at[self.head[a]].clone();
        for x in candidates {
            if self.sigma_used[x] {
                continue;
            }
            let closes = self.sigma_chains.closes(a, x);
            if closes && self.forward_faces + 1 > self.target - 1 {
                continue;
            }
            self.sigma[a] = Some(x);
            self.sigma_used[x] = true;
            if closes {
                self.forward_faces += 1;
            } else {
                self.sigma_chains.link(a, x);
            }
            if let Some(found) = self.assign_sigma(a + 1) {
                return Some(found);
            }
            if closes {
                self.forward_faces -= 1;
            } else {
                self.sigma_chains.unlink(a, x);
            }
            self.sigma_used[x] = false;
            self.sigma[a] = None;
        }
        None
    }

    /// Chooses the backward-face successor of each arc: an unused in-arc at
    /// the arc's tail. Each choice also extends the wheel at that vertex,
    /// which may only close once it covers every out-arc there.
    fn assign_tau(&mut self, a: usize) -> Option<EmbeddedDigraph> {
        if a == self.arcs {
            if self.forward_faces + self.backward_faces == self.target {
                return Some(self.materialize());
            }
            return None;
        }
        let v = self.tail[a];
        let needed_backward = self.target - self.forward_faces;
        let candidates = self.in_at[v].clone();
        for x in candidates {
            if self.tau_used[x] {
                continue;
            }
            let face_closes = self.tau_chains.closes(a, x);
            if face_closes && self.backward_faces + 1 > needed_backward {
                continue;
            }
            let y = self.sigma[x].expect("forward successors are fixed in phase two");
            let wheel_closes = self.wheel_chains.closes(a, y);
            let last_at_v = self.wheel_links[v] + 1 == self.out_at[v].len();
            if wheel_closes != last_at_v {
                continue;
            }
            self.tau[a] = Some(x);
            self.tau_used[x] = true;
            self.wheel_links[v] += 1;
            if face_closes {
                self.backward_faces += 1;
            } else {
                self.tau_chains.link(a, x);
            }
            if !wheel_closes {
                self.wheel_chains.link(a, y);
            }
            if let Some(found) = self.assign_tau(a + 1) {
                return Some(found);
            }
            if !wheel_closes {
                self.wheel_chains.unlink(a, y);
            }
            if face_closes {
                self.backward_faces -= 1;
            } else {
                self.tau_chains.unlink(a, x);
            }
            self.wheel_links[v] -= 1;
            self.tau_used[x] = false;
            self.tau[a] = None;
        }
        None
    }

    /// Reads the completed successor families back into rotation lists:
    /// starting from the smallest out-arc of each vertex, out- and in-ends
    /// alternate along the wheel.
    fn materialize(&self) -> EmbeddedDigraph {
        let mut rotations: BTreeMap<String, Vec<End>> = BTreeMap::new();
        for v in 0..self.d.vertex_count() {
            if self.out_at[v].is_empty() {
                continue;
            }
            let first = self.out_at[v][0];
            let mut ends = Vec::with_capacity(2 * self.out_at[v].len());
            let mut o = first;
            loop {
                ends.push(End::new(self.d.arcs()[o].id, Dir::Out));
                let x = self.tau[o].expect("backward successors are total");
                ends.push(End::new(self.d.arcs()[x].id, Dir::In));
                o = self.sigma[x].expect("forward successors are total");
                if o == first {
                    break;
                }
            }
            debug_assert_eq!(ends.len(), 2 * self.out_at[v].len());
            rotations.insert(self.d.label(v).to_string(), ends);
        }
        let embedded =
            EmbeddedDigraph::new(self.d.clone(), rotations).expect("search output is well formed");
        debug_assert!(
            {
                let report = embedded.trace_faces();
                report.genus == 0 && report.all_directed
            },
            "search output must be spherical and directed"
        );
        embedded
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::bidirected_complete;

    fn dipole(n: usize) -> MultiDigraph {
        let mut d = MultiDigraph::new(["u", "w"]).unwrap();
        for _ in 0..n {
            d.add_arc("u", "w").unwrap();
            d.add_arc("w", "u").unwrap();
        }
        d
    }

    fn assert_spherical(e: &EmbeddedDigraph) {
        assert!(e.is_alternating());
        let report = e.trace_faces();
        assert_eq!(report.genus, 0);
        assert!(report.all_directed);
    }

    #[test]
    fn finds_rotations_for_dipoles() {
        for n in 1..=4 {
            let e = find_spherical_rotation(&dipole(n), DEFAULT_MAX_SEARCH_ARCS)
                .unwrap()
                .unwrap_or_else(|| panic!("dipole {n} embeds in the sphere"));
            assert_spherical(&e);
        }
    }

    #[test]
    fn finds_rotations_for_small_bidirected_cliques() {
        for labels in [vec!["a", "b", "c"], vec!["a", "b", "c", "d"]] {
            let d = bidirected_complete(&labels).unwrap();
            let e = find_spherical_rotation(&d, DEFAULT_MAX_SEARCH_ARCS).unwrap().unwrap();
            assert_spherical(&e);
        }
    }

    #[test]
    fn finds_rotation_for_directed_cycle() {
        let mut d = MultiDigraph::new(["a", "b", "c", "d"]).unwrap();
        for (t, h) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")] {
            d.add_arc(t, h).unwrap();
        }
        let e = find_spherical_rotation(&d, DEFAULT_MAX_SEARCH_ARCS).unwrap().unwrap();
        assert_spherical(&e);
        assert_eq!(e.trace_faces().faces.len(), 2);
    }

    #[test]
    fn nonplanar_cliques_are_rejected_by_edge_bounds() {
        let k5 = bidirected_complete(&["a", "b", "c", "d", "e"]).unwrap();
        assert_eq!(find_spherical_rotation(&k5, DEFAULT_MAX_SEARCH_ARCS).unwrap(), None);

        // Bidirected K(3,3): bipartite, nine simple edges over six vertices.
        let mut k33 = MultiDigraph::new(["a", "b", "c", "x", "y", "z"]).unwrap();
        for t in ["a", "b", "c"] {
            for h in ["x", "y", "z"] {
                k33.add_arc(t, h).unwrap();
                k33.add_arc(h, t).unwrap();
            }
        }
        assert_eq!(find_spherical_rotation(&k33, DEFAULT_MAX_SEARCH_ARCS).unwrap(), None);
    }

    #[test]
    fn budget_and_precondition_errors() {
        assert_eq!(
            find_spherical_rotation(&dipole(13), DEFAULT_MAX_SEARCH_ARCS).unwrap_err(),
            SurfaceError::SearchBudgetExceeded { arcs: 26, max_arcs: 24 },
        );

        let mut unbalanced = MultiDigraph::new(["a", "b"]).unwrap();
        unbalanced.add_arc("a", "b").unwrap();
        assert!(matches!(
            find_spherical_rotation(&unbalanced, DEFAULT_MAX_SEARCH_ARCS),
            Err(SurfaceError::Digraph(DigraphError::NotEulerian { .. })),
        ));

        let disconnected = MultiDigraph::new(["a", "b"]).unwrap();
        assert_eq!(
            find_spherical_rotation(&disconnected, DEFAULT_MAX_SEARCH_ARCS).unwrap_err(),
            SurfaceError::NotConnected,
        );
    }

    #[test]
    fn single_vertex_embeds_trivially() {
        let d = MultiDigraph::new(["v"]).unwrap();
        let e = find_spherical_rotation(&d, DEFAULT_MAX_SEARCH_ARCS).unwrap().unwrap();
        assert_eq!(e.digraph().vertex_count(), 1);
    }
}
