//! Rotation systems and face tracing.

use std::collections::BTreeMap;
use std::fmt;

use crate::digraph::{ArcId, MultiDigraph};
use crate::surface::SurfaceError;

/// Which end of an arc: `Out` sits at the tail, `In` at the head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dir {
    In,
    Out,
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dir::In => write!(f, "in"),
            Dir::Out => write!(f, "out"),
        }
    }
}

/// One arc end, as placed in a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct End {
    pub arc: ArcId,
    pub dir: Dir,
}

impl End {
    pub fn new(arc: ArcId, dir: Dir) -> Self {
        End { arc, dir }
    }
}

/// One traversal direction of an arc: `forward` follows tail to head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dart {
    pub arc: ArcId,
    pub forward: bool,
}

/// A digraph together with a rotation system: the counterclockwise cyclic
/// order of arc ends around each vertex. The surface is always orientable;
/// its genus falls out of face tracing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedDigraph {
    digraph: MultiDigraph,
    /// Rotation per vertex, indexed like the digraph's labels.
    rotations: Vec<Vec<End>>,
}

/// What face tracing found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceReport {
    /// Each face as its dart cycle, rotated to start at the smallest dart;
    /// faces sorted by that starting dart.
    pub faces: Vec<Vec<Dart>>,
    /// Genus by Euler's formula; meaningful when the digraph is connected.
    pub genus: i64,
    /// True when every face is all-forward or all-backward.
    pub all_directed: bool,
}

impl FaceReport {
    /// `Some(true)` for an all-forward face, `Some(false)` for all-backward,
    /// `None` for a mixed one.
    pub fn face_direction(&self, face: usize) -> Option<bool> {
        let first = self.faces[face].first()?.forward;
        self.faces[face].iter().all(|d| d.forward == first).then_some(first)
    }
}

impl EmbeddedDigraph {
    /// Wraps a digraph with rotations keyed by vertex label. Every arc end
    /// must appear exactly once, at the vertex it is incident to; vertices
    /// of degree zero may be omitted.
    pub fn new(
        digraph: MultiDigraph,
        rotations: BTreeMap<String, Vec<End>>,
    ) -> Result<Self, SurfaceError> {
        let mut by_vertex: Vec<Vec<End>> = vec![Vec::new(); digraph.vertex_count()];
        for (label, ends) in rotations {
            let v = digraph
                .vertex_index(&label)
                .map_err(|_| SurfaceError::UnknownVertex(label.clone()))?;
            for end in &ends {
                let arc = digraph
                    .arc(end.arc)
                    .map_err(|_| SurfaceError::UnknownArc { vertex: label.clone(), arc: end.arc })?;
                let home = match end.dir {
                    Dir::Out => arc.tail,
                    Dir::In => arc.head,
                };
                if home != v {
                    return Err(SurfaceError::MisplacedEnd {
                        vertex: label.clone(),
                        arc: end.arc,
                        dir: end.dir,
                    });
                }
            }
            by_vertex[v] = ends;
        }
        let mut seen: BTreeMap<(ArcId, Dir), usize> = BTreeMap::new();
        for ends in &by_vertex {
            for end in ends {
                *seen.entry((end.arc, end.dir)).or_insert(0) += 1;
            }
        }
        for arc in digraph.arcs() {
            for dir in [Dir::Out, Dir::In] {
                match seen.get(&(arc.id, dir)).copied().unwrap_or(0) {
                    0 => return Err(SurfaceError::MissingEnd { arc: arc.id, dir }),
                    1 => {}
                    _ => return Err(SurfaceError::DuplicateEnd { arc: arc.id, dir }),
                }
            }
        }
        Ok(EmbeddedDigraph { digraph, rotations: by_vertex })
    }

    pub fn digraph(&self) -> &MultiDigraph {
        &self.digraph
    }

    /// The rotation at a vertex, by label.
    pub fn rotation(&self, label: &str) -> Result<&[End], SurfaceError> {
        let v = self
            .digraph
            .vertex_index(label)
            .map_err(|_| SurfaceError::UnknownVertex(label.to_string()))?;
        Ok(&self.rotations[v])
    }

    /// The rotation at a vertex, by index (panics out of range).
    pub fn rotation_at(&self, v: usize) -> &[End] {
        &self.rotations[v]
    }

    /// True when every rotation alternates in- and out-ends. Equivalent to
    /// every traced face being directed.
    pub fn is_alternating(&self) -> bool {
        self.rotations.iter().all(|ends| {
            ends.len() % 2 == 0
                && (0..ends.len()).all(|i| ends[i].dir != ends[(i + 1) % ends.len()].dir)
        })
    }

    /// Traces every face of the embedding. A dart arriving at a vertex
    /// leaves through the next end counterclockwise: an out-end starts the
    /// arc's forward dart, an in-end its backward dart.
    pub fn trace_faces(&self) -> FaceReport {
        // Where each end sits: vertex and position within its rotation.
        let mut position: BTreeMap<(ArcId, Dir), (usize, usize)> = BTreeMap::new();
        for (v, ends) in self.rotations.iter().enumerate() {
            for (i, end) in ends.iter().enumerate() {
                position.insert((end.arc, end.dir), (v, i));
            }
        }
        let mut darts: Vec<Dart> = self
            .digraph
            .arcs()
            .iter()
            .flat_map(|a| [Dart { arc: a.id, forward: false }, Dart { arc: a.id, forward: true }])
            .collect();
        darts.sort_unstable();

        let mut faces = Vec::new();
        let mut visited: BTreeMap<Dart, bool> = darts.iter().map(|&d| (d, false)).collect();
        for &start in &darts {
            if visited[&start] {
                continue;
            }
            let mut face = Vec::new();
            let mut dart = start;
            loop {
                face.push(dart);
                *visited.get_mut(&dart).expect("dart was enumerated") = true;
                let arrival = if dart.forward {
                    (dart.arc, Dir::In)
                } else {
                    (dart.arc, Dir::Out)
                };
                let (v, i) = position[&arrival];
                let ends = &self.rotations[v];
                let next = ends[(i + 1) % ends.len()];
                dart = Dart { arc: next.arc, forward: next.dir == Dir::Out };
                if dart == start {
                    break;
                }
            }
            faces.push(face);
        }
        // Faces already start at their smallest dart: the outer loop visits
        // darts in ascending order, so `start` is minimal in its cycle.
        faces.sort();

        let v = self.digraph.vertex_count() as i64;
        let e = self.digraph.arc_count() as i64;
        let f = faces.len() as i64;
        let genus = (2 - (v - e + f)) / 2;
        let report = FaceReport { faces, genus, all_directed: false };
        let all_directed = (0..report.faces.len()).all(|i| report.face_direction(i).is_some());
        FaceReport { all_directed, ..report }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dipole_digraph(n: usize) -> MultiDigraph {
        let mut d = MultiDigraph::new(["u", "w"]).unwrap();
        for _ in 0..n {
            d.add_arc("u", "w").unwrap();
            d.add_arc("w", "u").unwrap();
        }
        d
    }

    /// Nested pairing: u reads the bundles outermost first, w innermost
    /// first. Forward arcs have even ids, backward odd.
    fn dipole_rotation(n: usize) -> BTreeMap<String, Vec<End>> {
        let mut u = Vec::new();
        for i in (0..n).rev() {
            u.push(End::new(2 * i, Dir::Out));
            u.push(End::new(2 * i + 1, Dir::In));
        }
        let mut w = Vec::new();
        for i in 0..n {
            w.push(End::new(2 * i + 1, Dir::Out));
            w.push(End::new(2 * i, Dir::In));
        }
        BTreeMap::from([("u".to_string(), u), ("w".to_string(), w)])
    }

    #[test]
    fn thin_dipole_has_two_faces_on_the_sphere() {
        let e = EmbeddedDigraph::new(dipole_digraph(1), dipole_rotation(1)).unwrap();
        assert!(e.is_alternating());
        let report = e.trace_faces();
        assert_eq!(report.faces.len(), 2);
        assert_eq!(report.genus, 0);
        assert!(report.all_directed);
    }

    #[test]
    fn fat_dipole_rotation_is_spherical_and_directed() {
        for n in 2..=5 {
            let e = EmbeddedDigraph::new(dipole_digraph(n), dipole_rotation(n)).unwrap();
            let report = e.trace_faces();
            assert_eq!(report.faces.len(), 2 * n, "n = {n}");
            assert_eq!(report.genus, 0, "n = {n}");
            assert!(report.all_directed, "n = {n}");
        }
    }

    #[test]
    fn interleaving_both_sides_the_same_way_raises_genus() {
        // Same ascending interleave at both vertices: still alternating,
        // but the faces no longer bound disks on the sphere.
        let mut u = Vec::new();
        let mut w = Vec::new();
        for i in 0..5 {
            u.push(End::new(2 * i, Dir::Out));
            u.push(End::new(2 * i + 1, Dir::In));
            w.push(End::new(2 * i + 1, Dir::Out));
            w.push(End::new(2 * i, Dir::In));
        }
        let rot = BTreeMap::from([("u".to_string(), u), ("w".to_string(), w)]);
        let e = EmbeddedDigraph::new(dipole_digraph(5), rot).unwrap();
        assert!(e.is_alternating());
        let report = e.trace_faces();
        assert!(report.all_directed);
        assert_eq!(report.genus, 2);
    }

    #[test]
    fn blocked_rotation_is_not_alternating_and_mixes_faces() {
        // All out-ends first at u: faces must mix directions somewhere.
        let rot = BTreeMap::from([
            (
                "u".to_string(),
                vec![
                    End::new(0, Dir::Out),
                    End::new(2, Dir::Out),
                    End::new(1, Dir::In),
                    End::new(3, Dir::In),
                ],
            ),
            (
                "w".to_string(),
                vec![
                    End::new(1, Dir::Out),
                    End::new(3, Dir::Out),
                    End::new(0, Dir::In),
                    End::new(2, Dir::In),
                ],
            ),
        ]);
        let e = EmbeddedDigraph::new(dipole_digraph(2), rot).unwrap();
        assert!(!e.is_alternating());
        let report = e.trace_faces();
        assert!(!report.all_directed);
    }

    #[test]
    fn loop_embeds_with_two_monogons() {
        let mut d = MultiDigraph::new(["v"]).unwrap();
        d.add_arc("v", "v").unwrap();
        let rot = BTreeMap::from([(
            "v".to_string(),
            vec![End::new(0, Dir::Out), End::new(0, Dir::In)],
        )]);
        let e = EmbeddedDigraph::new(d, rot).unwrap();
        let report = e.trace_faces();
        assert_eq!(report.faces.len(), 2);
        assert_eq!(report.genus, 0);
        assert!(report.all_directed);
    }

    #[test]
    fn validation_rejects_malformed_rotations() {
        let d = dipole_digraph(1);
        // Missing end.
        let rot = BTreeMap::from([("u".to_string(), vec![End::new(0, Dir::Out)])]);
        assert_eq!(
            EmbeddedDigraph::new(d.clone(), rot).unwrap_err(),
            SurfaceError::MissingEnd { arc: 0, dir: Dir::In },
        );
        // End at the wrong vertex.
        let rot = BTreeMap::from([
            ("u".to_string(), vec![End::new(0, Dir::In), End::new(1, Dir::In)]),
            ("w".to_string(), vec![End::new(0, Dir::Out), End::new(1, Dir::Out)]),
        ]);
        assert_eq!(
            EmbeddedDigraph::new(d.clone(), rot).unwrap_err(),
            SurfaceError::MisplacedEnd { vertex: "u".to_string(), arc: 0, dir: Dir::In },
        );
        // Duplicated end.
        let rot = BTreeMap::from([
            ("u".to_string(), vec![End::new(0, Dir::Out), End::new(0, Dir::Out)]),
            ("w".to_string(), vec![End::new(1, Dir::Out), End::new(0, Dir::In)]),
        ]);
        assert_eq!(
            EmbeddedDigraph::new(d.clone(), rot).unwrap_err(),
            SurfaceError::DuplicateEnd { arc: 0, dir: Dir::Out },
        );
        // Unknown vertex and unknown arc.
        let rot = BTreeMap::from([("x".to_string(), vec![])]);
        assert_eq!(
            EmbeddedDigraph::new(d.clone(), rot).unwrap_err(),
            SurfaceError::UnknownVertex("x".to_string()),
        );
        let rot = BTreeMap::from([("u".to_string(), vec![End::new(9, Dir::Out)])]);
        assert_eq!(
            EmbeddedDigraph::new(d, rot).unwrap_err(),
            SurfaceError::UnknownArc { vertex: "u".to_string(), arc: 9 },
        );
    }
}
