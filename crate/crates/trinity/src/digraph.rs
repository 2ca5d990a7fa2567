//! Multidigraphs with stable arc identities.
//!
//! Vertices are labelled and keep their declared order, because Laplacian
//! rows and the matrices frozen in tests depend on it. Arcs carry explicit
//! ids so rotation systems and serialized documents can reference them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::zlinalg::{cokernel, AbelianGroup, IntMatrix, MatrixError};

/// Arc identifier, unique within one digraph.
pub type ArcId = usize;

/// Errors from digraph construction and digraph-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DigraphError {
    DuplicateVertex(String),
    UnknownVertex(String),
    DuplicateArcId(ArcId),
    UnknownArcId(ArcId),
    /// The operation needs at least one vertex.
    Empty,
    /// In-degree differs from out-degree somewhere.
    NotEulerian { vertex: String, in_degree: usize, out_degree: usize },
    /// The underlying multigraph is disconnected.
    NotConnected,
    Matrix(MatrixError),
}

impl fmt::Display for DigraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigraphError::DuplicateVertex(l) => write!(f, "duplicate vertex label {l:?}"),
            DigraphError::UnknownVertex(l) => write!(f, "unknown vertex label {l:?}"),
            DigraphError::DuplicateArcId(id) => write!(f, "duplicate arc id {id}"),
            DigraphError::UnknownArcId(id) => write!(f, "unknown arc id {id}"),
            DigraphError::Empty => write!(f, "digraph has no vertices"),
            DigraphError::NotEulerian { vertex, in_degree, out_degree } => write!(
                f,
                "vertex {vertex:?} has in-degree {in_degree} but out-degree {out_degree}"
            ),
            DigraphError::NotConnected => write!(f, "underlying multigraph is disconnected"),
            DigraphError::Matrix(e) => write!(f, "matrix error: {e}"),
        }
    }
}

impl std::error::Error for DigraphError {}

impl From<MatrixError> for DigraphError {
    fn from(e: MatrixError) -> Self {
        DigraphError::Matrix(e)
    }
}

/// One directed arc; `tail` and `head` are vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub id: ArcId,
    pub tail: usize,
    pub head: usize,
}

/// A finite directed multigraph: parallel arcs and loops are allowed, every
/// arc has an id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDigraph {
    labels: Vec<String>,
    arcs: Vec<Arc>,
    arc_index: BTreeMap<ArcId, usize>,
    label_index: BTreeMap<String, usize>,
}

impl MultiDigraph {
    /// Creates a digraph on the given vertices (declared order is kept).
    pub fn new<I, S>(vertices: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut label_index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(DigraphError::DuplicateVertex(l.clone()));
            }
        }
        Ok(MultiDigraph { labels, arcs: Vec::new(), arc_index: BTreeMap::new(), label_index })
    }

    /// Adds an arc with the next free sequential id; returns the id.
    pub fn add_arc(&mut self, tail: &str, head: &str) -> Result<ArcId, DigraphError> {
        let id = self.arc_index.keys().next_back().map_or(0, |last| last + 1);
        self.add_arc_with_id(id, tail, head)?;
        Ok(id)
    }

    /// Adds an arc under an explicit id (ids come from documents).
    pub fn add_arc_with_id(
        &mut self,
        id: ArcId,
        tail: &str,
        head: &str,
    ) -> Result<(), DigraphError> {
        let tail = self.vertex_index(tail)?;
        let head = self.vertex_index(head)?;
        if self.arc_index.contains_key(&id) {
            return Err(DigraphError::DuplicateArcId(id));
        }
        self.arc_index.insert(id, self.arcs.len());
        self.arcs.push(Arc { id, tail, head });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize, DigraphError> {
        self.label_index
            .get(label)
            .copied()
            .ok_or_else(|| DigraphError::UnknownVertex(label.to_string()))
    }

    /// Arcs in insertion order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> Result<&Arc, DigraphError> {
        self.arc_index
            .get(&id)
            .map(|&i| &self.arcs[i])
            .ok_or(DigraphError::UnknownArcId(id))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.tail == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.head == v).count()
    }

    /// Laplacian `L = B - A`: out-degree diagonal minus arc-count adjacency.
    /// Rows follow the declared vertex order; every row sums to zero.
    pub fn laplacian(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut l = IntMatrix::zeros(n, n);
        for v in 0..n {
            l.set(v, v, BigInt::from(self.out_degree(v) as i64));
        }
        for a in &self.arcs {
            let cur = l.get(a.tail, a.head) - 1;
            l.set(a.tail, a.head, cur);
        }
        l
    }

    /// Laplacian with the row and column of `vertex` removed.
    pub fn reduced_laplacian(&self, vertex: &str) -> Result<IntMatrix, DigraphError> {
        let v = self.vertex_index(vertex)?;
        Ok(self.laplacian().delete_row_col(v, v)?)
    }

    /// True when every vertex has equal in- and out-degree.
    pub fn is_eulerian(&self) -> bool {
        self.eulerian_violation().is_none()
    }

    fn eulerian_violation(&self) -> Option<DigraphError> {
        for v in 0..self.vertex_count() {
            let (ind, outd) = (self.in_degree(v), self.out_degree(v));
            if ind != outd {
                return Some(DigraphError::NotEulerian {
                    vertex: self.labels[v].clone(),
                    in_degree: ind,
                    out_degree: outd,
                });
            }
        }
        None
    }

    /// True when the underlying multigraph is connected (single vertices
    /// count as connected, the empty digraph does not).
    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.connected_ignoring(None, None)
    }

    /// Connectivity of the underlying multigraph after optionally deleting
    /// one vertex and up to two arcs (by id).
    fn connected_ignoring(&self, skip_vertex: Option<usize>, skip_arcs: Option<[ArcId; 2]>) -> bool {
        let n = self.vertex_count();
        let alive = |v: usize| Some(v) != skip_vertex;
        let total = (0..n).filter(|&v| alive(v)).count();
        if total == 0 {
            return true;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in &self.arcs {
            if let Some([x, y]) = skip_arcs {
                if a.id == x || a.id == y {
                    continue;
                }
            }
            if alive(a.tail) && alive(a.head) {
                adj[a.tail].push(a.head);
                adj[a.head].push(a.tail);
            }
        }
        let start = (0..n).find(|&v| alive(v)).expect("total > 0");
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 0;
        while let Some(v) = stack.pop() {
            reached += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        reached == total
    }

    /// Sandpile group: cokernel of the reduced Laplacian of a connected
    /// Eulerian digraph. The removed vertex is the last one declared; the
    /// group is independent of that choice.
    pub fn sandpile_group(&self) -> Result<AbelianGroup, DigraphError> {
        if self.vertex_count() == 0 {
            return Err(DigraphError::Empty);
        }
        if !self.is_connected() {
            return Err(DigraphError::NotConnected);
        }
        if let Some(err) = self.eulerian_violation() {
            return Err(err);
        }
        if self.vertex_count() == 1 {
            return Ok(AbelianGroup::trivial());
        }
        let last = self.labels.last().expect("nonempty").clone();
        let reduced = self.reduced_laplacian(&last)?;
        Ok(cokernel(&reduced)?)
    }

    /// Connectivity screening of the underlying multigraph: connectedness,
    /// Eulerian balance, loops, cut vertices (brute force: delete each vertex
    /// and recheck), and disconnecting arc pairs (brute force over unordered
    /// pairs; a bridge shows up as every pair containing it).
    pub fn audit(&self) -> ConnectivityReport {
        let connected = self.is_connected();
        let eulerian = self.eulerian_violation().is_none();
        let has_loops = self.arcs.iter().any(|a| a.tail == a.head);

        let mut cut_vertices = Vec::new();
        if connected && self.vertex_count() > 2 {
            for v in 0..self.vertex_count() {
                if !self.connected_ignoring(Some(v), None) {
                    cut_vertices.push(self.labels[v].clone());
                }
            }
        }

        let mut two_edge_cuts = Vec::new();
        if connected {
            let ids: Vec<ArcId> = self.arcs.iter().map(|a| a.id).collect();
            for (i, &x) in ids.iter().enumerate() {
                for &y in &ids[i + 1..] {
                    if !self.connected_ignoring(None, Some([x, y])) {
                        two_edge_cuts.push((x.min(y), x.max(y)));
                    }
                }
            }
            two_edge_cuts.sort_unstable();
        }

        let robust = connected
            && !has_loops
            && cut_vertices.is_empty()
            && two_edge_cuts.is_empty()
            && self.vertex_count() > 0;
        ConnectivityReport { connected, eulerian, has_loops, cut_vertices, two_edge_cuts, robust }
    }

    /// Sum of |L[i][j]| over the Laplacian, used as a quick sanity metric in
    /// a few tests.
    pub fn laplacian_weight(&self) -> BigInt {
        let l = self.laplacian();
        let mut acc = BigInt::from(0);
        for i in 0..l.rows() {
            for j in 0..l.cols() {
                acc += l.get(i, j).abs();
            }
        }
        acc
    }
}

/// What `MultiDigraph::audit` found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub connected: bool,
    pub eulerian: bool,
    pub has_loops: bool,
    /// Labels of vertices whose deletion disconnects the rest.
    pub cut_vertices: Vec<String>,
    /// Unordered arc-id pairs whose joint deletion disconnects the graph.
    pub two_edge_cuts: Vec<(ArcId, ArcId)>,
    /// Loop-free, connected, no cut vertex, no disconnecting arc pair: the
    /// screening predicate construction inputs must pass.
    pub robust: bool,
}

/// Builds the bidirected clique on the given labels: one arc each way per
/// unordered pair. Used by tests and the embedding-search examples.
pub fn bidirected_complete(labels: &[&str]) -> Result<MultiDigraph, DigraphError> {
    let mut d = MultiDigraph::new(labels.iter().copied())?;
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            d.add_arc(labels[i], labels[j])?;
            d.add_arc(labels[j], labels[i])?;
        }
    }
    Ok(d)
}

/// Distinct vertex labels appearing as arc endpoints, in declared order.
/// Convenience for callers assembling digraphs from documents.
pub fn used_labels(d: &MultiDigraph) -> BTreeSet<String> {
    d.arcs()
        .iter()
        .flat_map(|a| [d.label(a.tail).to_string(), d.label(a.head).to_string()])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::group_from_cyclic_orders;

    fn dipole(n: usize) -> MultiDigraph {
        let mut d = MultiDigraph::new(["u", "w"]).unwrap();
        for _ in 0..n {
            d.add_arc("u", "w").unwrap();
            d.add_arc("w", "u").unwrap();
        }
        d
    }

    #[test]
    fn laplacian_of_dipole() {
        let l = dipole(3).laplacian();
        assert_eq!(l, IntMatrix::from_i64_rows(&[&[3, -3], &[-3, 3]]).unwrap());
        let reduced = dipole(3).reduced_laplacian("u").unwrap();
        assert_eq!(reduced, IntMatrix::from_i64_rows(&[&[3]]).unwrap());
    }

    #[test]
    fn laplacian_row_sums_are_zero() {
        let mut d = MultiDigraph::new(["a", "b", "c"]).unwrap();
        d.add_arc("a", "b").unwrap();
        d.add_arc("a", "b").unwrap();
        d.add_arc("b", "c").unwrap();
        d.add_arc("c", "a").unwrap();
        d.add_arc("a", "a").unwrap(); // loop: contributes to neither row sums nor off-diagonal pattern breakage
        let l = d.laplacian();
        for i in 0..l.rows() {
            let sum: BigInt = (0..l.cols()).map(|j| l.get(i, j).clone()).sum();
            assert_eq!(sum, BigInt::from(0));
        }
    }

    #[test]
    fn sandpile_group_of_dipole_is_cyclic() {
        let g = dipole(5).sandpile_group().unwrap();
        assert_eq!(g, AbelianGroup::cyclic(5));
    }

    #[test]
    fn sandpile_group_of_bidirected_k4() {
        let d = bidirected_complete(&["p", "q", "r", "s"]).unwrap();
        let g = d.sandpile_group().unwrap();
        let want = group_from_cyclic_orders([4u64, 4].map(BigInt::from)).unwrap();
        assert_eq!(g, want);
    }

    #[test]
    fn sandpile_group_rejects_unbalanced_and_disconnected() {
        let mut d = MultiDigraph::new(["a", "b"]).unwrap();
        d.add_arc("a", "b").unwrap();
        assert!(matches!(d.sandpile_group(), Err(DigraphError::NotEulerian { .. })));

        let d = MultiDigraph::new(["a", "b"]).unwrap();
        assert!(matches!(d.sandpile_group(), Err(DigraphError::NotConnected)));
    }

    #[test]
    fn audit_accepts_fat_dipole() {
        let report = dipole(2).audit();
        assert!(report.connected && report.eulerian && !report.has_loops);
        assert!(report.cut_vertices.is_empty());
        assert!(report.two_edge_cuts.is_empty());
        assert!(report.robust);
    }

    #[test]
    fn audit_flags_thin_dipole_and_loops() {
        let report = dipole(1).audit();
        assert_eq!(report.two_edge_cuts, vec![(0, 1)]);
        assert!(!report.robust);

        let mut d = dipole(2);
        d.add_arc("u", "u").unwrap();
        let report = d.audit();
        assert!(report.has_loops && !report.robust);
    }

    #[test]
    fn audit_finds_cut_vertex_of_two_triangles() {
        // Two directed triangles sharing exactly the vertex "m".
        let mut d = MultiDigraph::new(["m", "a", "b", "x", "y"]).unwrap();
        for (t, h) in [("m", "a"), ("a", "b"), ("b", "m"), ("m", "x"), ("x", "y"), ("y", "m")] {
            d.add_arc(t, h).unwrap();
        }
        let report = d.audit();
        assert!(report.connected && report.eulerian);
        assert_eq!(report.cut_vertices, vec!["m".to_string()]);
        assert!(!report.robust);
    }

    #[test]
    fn duplicate_ids_and_labels_are_rejected() {
        assert!(matches!(
            MultiDigraph::new(["a", "a"]),
            Err(DigraphError::DuplicateVertex(_))
        ));
        let mut d = MultiDigraph::new(["a", "b"]).unwrap();
        d.add_arc_with_id(7, "a", "b").unwrap();
        assert!(matches!(
            d.add_arc_with_id(7, "b", "a"),
            Err(DigraphError::DuplicateArcId(7))
        ));
        // Sequential allocation continues past explicit ids.
        assert_eq!(d.add_arc("b", "a").unwrap(), 8);
    }
}
