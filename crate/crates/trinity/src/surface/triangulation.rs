//! Two-colored tripartite triangulations, and their traffic with embedded
//! digraphs and latin bitrades.
//!
//! A triangulation here is combinatorial: three vertex classes and two sets
//! of triangles (white and black) with one coordinate in each class. A
//! spherical, directed embedding unfolds into one: vertices keep their
//! names, forward faces become the second class, backward faces the third,
//! and each arc contributes a black triangle at its tail and a white one at
//! its head. Folding back picks a class and keeps one arc per black
//! triangle, pointed at the white triangle sharing its other two corners.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::digraph::{DigraphError, MultiDigraph};
use crate::latin::{LatinBitrade, PartialLatinSquare, Triple};
use crate::surface::embedding::{Dir, EmbeddedDigraph, End};
use crate::surface::SurfaceError;

/// A properly two-colored triangulation of a tripartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    classes: [BTreeSet<String>; 3],
    white: BTreeSet<[String; 3]>,
    black: BTreeSet<[String; 3]>,
}

impl Triangulation {
    /// Validates class membership coordinate by coordinate, equal halves,
    /// and that every class label is used. Repeated label pairs are allowed
    /// here; the conversions that need unique pairs check for themselves.
    pub fn new(
        classes: [BTreeSet<String>; 3],
        white: BTreeSet<[String; 3]>,
        black: BTreeSet<[String; 3]>,
    ) -> Result<Self, SurfaceError> {
        if white.len() != black.len() {
            return Err(SurfaceError::HalvesUnequal { white: white.len(), black: black.len() });
        }
        let mut used: [BTreeSet<&String>; 3] = Default::default();
        for triangle in white.iter().chain(black.iter()) {
            for (c, label) in triangle.iter().enumerate() {
                if !classes[c].contains(label) {
                    return Err(SurfaceError::TriangleOutsideClasses {
                        triangle: triangle.clone(),
                    });
                }
                used[c].insert(label);
            }
        }
        for (c, class) in classes.iter().enumerate() {
            if let Some(unused) = class.iter().find(|l| !used[c].contains(l)) {
                return Err(SurfaceError::UnusedClassLabel { label: unused.clone() });
            }
        }
        Ok(Triangulation { classes, white, black })
    }

    pub fn classes(&self) -> &[BTreeSet<String>; 3] {
        &self.classes
    }

    pub fn white(&self) -> &BTreeSet<[String; 3]> {
        &self.white
    }

    pub fn black(&self) -> &BTreeSet<[String; 3]> {
        &self.black
    }

    /// Total vertices across the three classes.
    pub fn vertex_count(&self) -> usize {
        self.classes.iter().map(BTreeSet::len).sum()
    }

    /// Genus by Euler's formula: each triangle has three edges, each edge
    /// two triangles of opposite colors. Meaningful for connected
    /// triangulations of closed orientable surfaces.
    pub fn genus(&self) -> i64 {
        let v = self.vertex_count() as i64;
        let w = self.white.len() as i64;
        (2 - (v - w)) / 2
    }
}

/// Triangles of one color, keyed by their label pair in two fixed classes.
type PairIndex = BTreeMap<(String, String), [String; 3]>;

/// For one color and one class pair: the triangle holding each label pair,
/// or an error when a pair repeats within the color.
fn pair_map(
    triangles: &BTreeSet<[String; 3]>,
    c1: usize,
    c2: usize,
) -> Result<PairIndex, SurfaceError> {
    let mut map = BTreeMap::new();
    for t in triangles {
        let key = (t[c1].clone(), t[c2].clone());
        if map.insert(key.clone(), t.clone()).is_some() {
            return Err(SurfaceError::PairAmbiguous { labels: key });
        }
    }
    Ok(map)
}

/// Both colors' pair maps for one class pair, with equal key sets.
fn matched_pair_maps(
    t: &Triangulation,
    c1: usize,
    c2: usize,
) -> Result<(PairIndex, PairIndex), SurfaceError> {
    let white = pair_map(&t.white, c1, c2)?;
    let black = pair_map(&t.black, c1, c2)?;
    if let Some(unmatched) = white.keys().find(|k| !black.contains_key(*k)) {
        return Err(SurfaceError::PairUnmatched { labels: unmatched.clone() });
    }
    if let Some(unmatched) = black.keys().find(|k| !white.contains_key(*k)) {
        return Err(SurfaceError::PairUnmatched { labels: unmatched.clone() });
    }
    Ok((white, black))
}

/// Unfolds a connected, separated bitrade into a triangulation: rows,
/// columns, and symbols are the classes, and each triple is a triangle of
/// its half's color.
pub fn triangulation_from_bitrade(bt: &LatinBitrade) -> Result<Triangulation, SurfaceError> {
    if !bt.is_separated() {
        return Err(SurfaceError::Latin(crate::latin::LatinError::NotSeparated));
    }
    if !bt.is_connected() {
        return Err(SurfaceError::Latin(crate::latin::LatinError::NotConnected));
    }
    let classes = [
        bt.white().rows().iter().map(|s| s.to_string()).collect(),
        bt.white().cols().iter().map(|s| s.to_string()).collect(),
        bt.white().syms().iter().map(|s| s.to_string()).collect(),
    ];
    let as_triangles = |p: &PartialLatinSquare| {
        p.triples()
            .iter()
            .map(|t| [t.row.clone(), t.col.clone(), t.sym.clone()])
            .collect::<BTreeSet<_>>()
    };
    Triangulation::new(classes, as_triangles(bt.white()), as_triangles(bt.black()))
}

/// Folds a triangulation along one vertex class: one vertex per label of
/// that class, one arc per black triangle, running from the black
/// triangle's label to the label of the white triangle that shares its two
/// other coordinates. The rotation walks the triangle wheel around each
/// vertex, so the result comes back embedded.
///
/// Every cross-class label pair must lie in exactly one triangle of each
/// color, and the wheel around each vertex must close into a single cycle.
pub fn tutte_digraph(
    t: &Triangulation,
    class_index: usize,
) -> Result<EmbeddedDigraph, SurfaceError> {
    if class_index > 2 {
        return Err(SurfaceError::ClassOutOfRange { index: class_index });
    }
    let i = class_index;
    // The class that follows `i` in white orientation, and the one that
    // follows it in black orientation.
    let white_next = (i + 1) % 3;
    let black_next = (i + 2) % 3;
    let (white_by_rest, _) = matched_pair_maps(t, white_next, black_next)?;
    let (_, black_by_wn) = matched_pair_maps(t, i, white_next)?;
    let (white_by_bn, _) = matched_pair_maps(t, i, black_next)?;

    let labels: Vec<&str> = t.classes[i].iter().map(String::as_str).collect();
    let mut d = MultiDigraph::new(labels.iter().copied())?;
    let mut arc_of_black: BTreeMap<&[String; 3], usize> = BTreeMap::new();
    let mut black_of_white: BTreeMap<&[String; 3], &[String; 3]> = BTreeMap::new();
    for (id, b) in t.black.iter().enumerate() {
        let key = (b[white_next].clone(), b[black_next].clone());
        let w = white_by_rest.get(&key).expect("pair maps are matched");
        d.add_arc_with_id(id, &b[i], &w[i])?;
        arc_of_black.insert(b, id);
        black_of_white.insert(w, b);
    }

    let mut rotations: BTreeMap<String, Vec<End>> = BTreeMap::new();
    for label in &t.classes[i] {
        let incident: Vec<&[String; 3]> = t.black.iter().filter(|b| &b[i] == label).collect();
        if incident.is_empty() {
            return Err(SurfaceError::CornerNotAWheel { label: label.clone() });
        }
        let start = incident[0];
        let mut ends = Vec::with_capacity(2 * incident.len());
        let mut black = start;
        loop {
            ends.push(End::new(arc_of_black[black], Dir::Out));
            // Cross the black triangle's exit edge to its white neighbor.
            let white = white_by_bn
                .get(&(label.clone(), black[black_next].clone()))
                .expect("pair maps are matched");
            let b = black_of_white
                .get(white)
                .ok_or_else(|| SurfaceError::CornerNotAWheel { label: label.clone() })?;
            ends.push(End::new(arc_of_black[b], Dir::In));
            // Cross the white triangle's exit edge to the next black.
            black = black_by_wn
                .get(&(label.clone(), white[white_next].clone()))
                .expect("pair maps are matched");
            if black == start {
                break;
            }
            if ends.len() > 2 * incident.len() {
                return Err(SurfaceError::CornerNotAWheel { label: label.clone() });
            }
        }
        if ends.len() != 2 * incident.len() {
            return Err(SurfaceError::CornerNotAWheel { label: label.clone() });
        }
        rotations.insert(label.clone(), ends);
    }
    EmbeddedDigraph::new(d, rotations)
}

/// Unfolds a connected, spherical, directed embedding into a triangulation,
/// and into the corresponding latin bitrade when the triangulation is
/// simple. Vertex labels become rows, forward faces columns (`F1`, `F2`,
/// ...), backward faces symbols (`G1`, ...); each arc contributes the black
/// triple at its tail and the white one at its head.
pub fn bitrade_from_embedding(
    e: &EmbeddedDigraph,
) -> Result<(Triangulation, Option<LatinBitrade>), SurfaceError> {
    let d = e.digraph();
    if d.arc_count() == 0 {
        return Err(SurfaceError::Digraph(DigraphError::Empty));
    }
    if !d.is_connected() {
        return Err(SurfaceError::NotConnected);
    }
    let report = e.trace_faces();
    if !report.all_directed {
        return Err(SurfaceError::NotAllDirected);
    }
    if report.genus != 0 {
        return Err(SurfaceError::NonSpherical { genus: report.genus });
    }

    let mut forward_of: BTreeMap<usize, String> = BTreeMap::new();
    let mut backward_of: BTreeMap<usize, String> = BTreeMap::new();
    let (mut nf, mut ng) = (0usize, 0usize);
    for (i, face) in report.faces.iter().enumerate() {
        let forward = report.face_direction(i).expect("faces are all directed");
        let label = if forward {
            nf += 1;
            format!("F{nf}")
        } else {
            ng += 1;
            format!("G{ng}")
        };
        for dart in face {
            if forward {
                forward_of.insert(dart.arc, label.clone());
            } else {
                backward_of.insert(dart.arc, label.clone());
            }
        }
    }

    let mut white = BTreeSet::new();
    let mut black = BTreeSet::new();
    for a in d.arcs() {
        let f = forward_of[&a.id].clone();
        let g = backward_of[&a.id].clone();
        white.insert([d.label(a.head).to_string(), f.clone(), g.clone()]);
        black.insert([d.label(a.tail).to_string(), f, g]);
    }
    // The triple sets cannot express a triangle occurring twice; treat that
    // as the pair ambiguity it is.
    if white.len() != d.arc_count() || black.len() != d.arc_count() {
        let mut count: BTreeMap<(String, String), usize> = BTreeMap::new();
        for a in d.arcs() {
            let key = (forward_of[&a.id].clone(), backward_of[&a.id].clone());
            *count.entry(key).or_insert(0) += 1;
        }
        let dup = count.into_iter().find(|(_, n)| *n > 1).map(|(k, _)| k);
        return Err(SurfaceError::PairAmbiguous {
            labels: dup.expect("a collapsed triple repeats its face pair"),
        });
    }
    let classes = [
        d.labels().iter().cloned().collect(),
        forward_of.values().cloned().collect(),
        backward_of.values().cloned().collect(),
    ];
    let t = Triangulation::new(classes, white, black)?;

    let simple = (0..3).all(|c1| {
        (c1 + 1..3).all(|c2| matched_pair_maps(&t, c1, c2).is_ok())
    }) && t.white.is_disjoint(&t.black);
    if !simple {
        return Ok((t, None));
    }
    let as_square = |triangles: &BTreeSet<[String; 3]>| {
        PartialLatinSquare::new(
            triangles
                .iter()
                .map(|tr| Triple::new(tr[0].clone(), tr[1].clone(), tr[2].clone())),
        )
    };
    let bitrade = LatinBitrade::new(as_square(&t.white)?, as_square(&t.black)?)?;
    Ok((t, Some(bitrade)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::AbelianGroup;

    fn intercalate() -> LatinBitrade {
        let white = PartialLatinSquare::from_triples(&[
            ("r1", "c1", "a"),
            ("r1", "c2", "b"),
            ("r2", "c1", "b"),
            ("r2", "c2", "a"),
        ])
        .unwrap();
        let black = PartialLatinSquare::from_triples(&[
            ("r1", "c1", "b"),
            ("r1", "c2", "a"),
            ("r2", "c1", "a"),
            ("r2", "c2", "b"),
        ])
        .unwrap();
        LatinBitrade::new(white, black).unwrap()
    }

    fn dipole_embedding(n: usize) -> EmbeddedDigraph {
        let mut d = MultiDigraph::new(["u", "w"]).unwrap();
        for _ in 0..n {
            d.add_arc("u", "w").unwrap();
            d.add_arc("w", "u").unwrap();
        }
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
        let rot = BTreeMap::from([("u".to_string(), u), ("w".to_string(), w)]);
        EmbeddedDigraph::new(d, rot).unwrap()
    }

    #[test]
    fn intercalate_unfolds_to_a_spherical_triangulation() {
        let t = triangulation_from_bitrade(&intercalate()).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.white().len(), 4);
        assert_eq!(t.genus(), 0);
    }

    #[test]
    fn folding_back_gives_the_same_group_for_every_class() {
        let bt = intercalate();
        let t = triangulation_from_bitrade(&bt).unwrap();
        let want = bt.canonical_group().unwrap();
        for class in 0..3 {
            let e = tutte_digraph(&t, class).unwrap();
            let report = e.trace_faces();
            assert_eq!(report.genus, 0, "class {class}");
            assert!(report.all_directed, "class {class}");
            let d = e.digraph();
            assert_eq!(d.vertex_count(), 2);
            assert_eq!(d.arc_count(), 4);
            assert_eq!(d.sandpile_group().unwrap(), want, "class {class}");
        }
        assert!(matches!(
            tutte_digraph(&t, 3),
            Err(SurfaceError::ClassOutOfRange { index: 3 })
        ));
    }

    #[test]
    fn fat_dipole_embedding_unfolds_to_an_intercalate() {
        let e = dipole_embedding(2);
        let (t, bt) = bitrade_from_embedding(&e).unwrap();
        assert_eq!(t.vertex_count(), e.digraph().arc_count() + 2);
        let bt = bt.expect("the fat dipole's triangulation is simple");
        assert_eq!(bt.size(), 4);
        assert!(bt.is_spherical());
        assert_eq!(bt.canonical_group().unwrap(), AbelianGroup::cyclic(2));
    }

    #[test]
    fn thin_dipole_triangulation_is_not_simple() {
        let (t, bt) = bitrade_from_embedding(&dipole_embedding(1)).unwrap();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.genus(), 0);
        assert!(bt.is_none());
    }

    #[test]
    fn loop_monogons_are_not_a_bitrade() {
        let mut d = MultiDigraph::new(["v"]).unwrap();
        d.add_arc("v", "v").unwrap();
        let rot = BTreeMap::from([(
            "v".to_string(),
            vec![End::new(0, Dir::Out), End::new(0, Dir::In)],
        )]);
        let e = EmbeddedDigraph::new(d, rot).unwrap();
        let (t, bt) = bitrade_from_embedding(&e).unwrap();
        assert_eq!(t.white(), t.black());
        assert!(bt.is_none());
    }

    #[test]
    fn unfolding_rejects_wrong_surfaces_and_mixed_faces() {
        // Same ascending interleave both sides: genus two.
        let mut d = MultiDigraph::new(["u", "w"]).unwrap();
        for _ in 0..5 {
            d.add_arc("u", "w").unwrap();
            d.add_arc("w", "u").unwrap();
        }
        let mut u = Vec::new();
        let mut w = Vec::new();
        for i in 0..5 {
            u.push(End::new(2 * i, Dir::Out));
            u.push(End::new(2 * i + 1, Dir::In));
            w.push(End::new(2 * i + 1, Dir::Out));
            w.push(End::new(2 * i, Dir::In));
        }
        let rot = BTreeMap::from([("u".to_string(), u), ("w".to_string(), w)]);
        let e = EmbeddedDigraph::new(d.clone(), rot).unwrap();
        assert_eq!(
            bitrade_from_embedding(&e).unwrap_err(),
            SurfaceError::NonSpherical { genus: 2 },
        );

        let mut d2 = MultiDigraph::new(["u", "w"]).unwrap();
        for _ in 0..2 {
            d2.add_arc("u", "w").unwrap();
            d2.add_arc("w", "u").unwrap();
        }
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
        let e = EmbeddedDigraph::new(d2, rot).unwrap();
        assert_eq!(bitrade_from_embedding(&e).unwrap_err(), SurfaceError::NotAllDirected);
    }

    #[test]
    fn unfold_fold_roundtrip_preserves_the_group() {
        let bt = intercalate();
        let t = triangulation_from_bitrade(&bt).unwrap();
        let e = tutte_digraph(&t, 0).unwrap();
        let (_, bt2) = bitrade_from_embedding(&e).unwrap();
        let bt2 = bt2.expect("roundtrip stays simple");
        assert_eq!(
            bt2.canonical_group().unwrap(),
            bt.canonical_group().unwrap(),
        );
    }

    #[test]
    fn validation_catches_malformed_triangulations() {
        let classes = || -> [BTreeSet<String>; 3] {
            [
                BTreeSet::from(["x".to_string()]),
                BTreeSet::from(["y".to_string()]),
                BTreeSet::from(["z".to_string()]),
            ]
        };
        let tri = |a: &str, b: &str, c: &str| [a.to_string(), b.to_string(), c.to_string()];

        let err = Triangulation::new(
            classes(),
            BTreeSet::from([tri("x", "y", "z")]),
            BTreeSet::from([tri("y", "x", "z")]),
        )
        .unwrap_err();
        assert!(matches!(err, SurfaceError::TriangleOutsideClasses { .. }));

        let err = Triangulation::new(
            classes(),
            BTreeSet::from([tri("x", "y", "z")]),
            BTreeSet::new(),
        )
        .unwrap_err();
        assert_eq!(err, SurfaceError::HalvesUnequal { white: 1, black: 0 });

        let mut wide = classes();
        wide[0].insert("x2".to_string());
        let err = Triangulation::new(
            wide,
            BTreeSet::from([tri("x", "y", "z")]),
            BTreeSet::from([tri("x", "y", "z")]),
        )
        .unwrap_err();
        assert_eq!(err, SurfaceError::UnusedClassLabel { label: "x2".to_string() });
    }

    #[test]
    fn unseparated_bitrades_do_not_unfold() {
        // Two intercalates glued along row r1: connected but unseparated.
        let white = PartialLatinSquare::from_triples(&[
            ("r1", "c1", "a"),
            ("r1", "c2", "b"),
            ("r2", "c1", "b"),
            ("r2", "c2", "a"),
            ("r1", "c3", "c"),
            ("r1", "c4", "d"),
            ("r3", "c3", "d"),
            ("r3", "c4", "c"),
        ])
        .unwrap();
        let black = PartialLatinSquare::from_triples(&[
            ("r1", "c1", "b"),
            ("r1", "c2", "a"),
            ("r2", "c1", "a"),
            ("r2", "c2", "b"),
            ("r1", "c3", "d"),
            ("r1", "c4", "c"),
            ("r3", "c3", "c"),
            ("r3", "c4", "d"),
        ])
        .unwrap();
        let bt = LatinBitrade::new(white, black).unwrap();
        assert!(!bt.is_separated());
        assert!(matches!(
            triangulation_from_bitrade(&bt),
            Err(SurfaceError::Latin(crate::latin::LatinError::NotSeparated)),
        ));
    }

    #[test]
    fn disconnected_bitrades_do_not_unfold() {
        // Two intercalates with no shared line: every line is a single
        // cycle, but the cell graph falls apart.
        let white = PartialLatinSquare::from_triples(&[
            ("r1", "c1", "a"),
            ("r1", "c2", "b"),
            ("r2", "c1", "b"),
            ("r2", "c2", "a"),
            ("r3", "c3", "c"),
            ("r3", "c4", "d"),
            ("r4", "c3", "d"),
            ("r4", "c4", "c"),
        ])
        .unwrap();
        let black = PartialLatinSquare::from_triples(&[
            ("r1", "c1", "b"),
            ("r1", "c2", "a"),
            ("r2", "c1", "a"),
            ("r2", "c2", "b"),
            ("r3", "c3", "d"),
            ("r3", "c4", "c"),
            ("r4", "c3", "c"),
            ("r4", "c4", "d"),
        ])
        .unwrap();
        let bt = LatinBitrade::new(white, black).unwrap();
        assert!(bt.is_separated());
        assert!(!bt.is_connected());
        assert!(matches!(
            triangulation_from_bitrade(&bt),
            Err(SurfaceError::Latin(crate::latin::LatinError::NotConnected)),
        ));
    }
}
