//! Partial latin squares, their relation-matrix presentations, and
//! main-class transformations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::latin::LatinError;
use crate::zlinalg::{cokernel, AbelianGroup, IntMatrix};

/// One of the three coordinate roles of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Row,
    Col,
    Sym,
}

impl Role {
    /// All roles in coordinate order.
    pub const ALL: [Role; 3] = [Role::Row, Role::Col, Role::Sym];
}

/// A single `(row, column, symbol)` entry of a partial latin square.
///
/// The three label classes are independent namespaces: a row named `"1"` and
/// a column named `"1"` are unrelated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub row: String,
    pub col: String,
    pub sym: String,
}

impl Triple {
    pub fn new(
        row: impl Into<String>,
        col: impl Into<String>,
        sym: impl Into<String>,
    ) -> Self {
        Triple { row: row.into(), col: col.into(), sym: sym.into() }
    }

    /// The coordinate filling the given role.
    pub fn get(&self, role: Role) -> &str {
        match role {
            Role::Row => &self.row,
            Role::Col => &self.col,
            Role::Sym => &self.sym,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.row, self.col, self.sym)
    }
}

/// A set of triples in which any two distinct triples agree in at most one
/// coordinate.
///
/// Triples are stored sorted, so equal squares compare equal and iteration
/// order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialLatinSquare {
    triples: Vec<Triple>,
}

impl PartialLatinSquare {
    /// Builds a square from triples, rejecting any pair that agrees in two
    /// or more coordinates.  Exact duplicates collapse to one entry.
    pub fn new(triples: impl IntoIterator<Item = Triple>) -> Result<Self, LatinError> {
        let set: BTreeSet<Triple> = triples.into_iter().collect();
        let mut by_cell: BTreeMap<(&str, &str), &Triple> = BTreeMap::new();
        let mut by_row_sym: BTreeMap<(&str, &str), &Triple> = BTreeMap::new();
        let mut by_col_sym: BTreeMap<(&str, &str), &Triple> = BTreeMap::new();
        for t in &set {
            if let Some(prev) = by_cell.insert((&t.row, &t.col), t) {
                let (a, b) = (Box::new(prev.clone()), Box::new(t.clone()));
                return Err(LatinError::LatinViolation(a, b));
            }
            if let Some(prev) = by_row_sym.insert((&t.row, &t.sym), t) {
                let (a, b) = (Box::new(prev.clone()), Box::new(t.clone()));
                return Err(LatinError::LatinViolation(a, b));
            }
            if let Some(prev) = by_col_sym.insert((&t.col, &t.sym), t) {
                let (a, b) = (Box::new(prev.clone()), Box::new(t.clone()));
                return Err(LatinError::LatinViolation(a, b));
            }
        }
        Ok(PartialLatinSquare { triples: set.into_iter().collect() })
    }

    /// Convenience constructor from string slices.
    pub fn from_triples(triples: &[(&str, &str, &str)]) -> Result<Self, LatinError> {
        Self::new(triples.iter().map(|(r, c, s)| Triple::new(*r, *c, *s)))
    }

    /// The triples in sorted order.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// Number of triples.
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// The labels used in the given role, in sorted order.
    pub fn labels(&self, role: Role) -> BTreeSet<&str> {
        self.triples.iter().map(|t| t.get(role)).collect()
    }

    pub fn rows(&self) -> BTreeSet<&str> {
        self.labels(Role::Row)
    }

    pub fn cols(&self) -> BTreeSet<&str> {
        self.labels(Role::Col)
    }

    pub fn syms(&self) -> BTreeSet<&str> {
        self.labels(Role::Sym)
    }

    /// The occupied cells, in sorted order.
    pub fn cells(&self) -> impl Iterator<Item = (&str, &str)> {
        self.triples.iter().map(|t| (t.row.as_str(), t.col.as_str()))
    }

    /// The symbol in the given cell, if occupied.
    pub fn symbol_at(&self, row: &str, col: &str) -> Option<&str> {
        self.triples
            .iter()
            .find(|t| t.row == row && t.col == col)
            .map(|t| t.sym.as_str())
    }

    /// The symbols appearing in the given row, in sorted order.
    pub fn row_symbols(&self, row: &str) -> BTreeSet<&str> {
        self.triples
            .iter()
            .filter(|t| t.row == row)
            .map(|t| t.sym.as_str())
            .collect()
    }

    /// The symbols appearing in the given column, in sorted order.
    pub fn col_symbols(&self, col: &str) -> BTreeSet<&str> {
        self.triples
            .iter()
            .filter(|t| t.col == col)
            .map(|t| t.sym.as_str())
            .collect()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }
}

/// The abelian group presented by a partial latin square: one generator per
/// used label, one relation `row + col + sym = 0` per triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    /// Generators in order: rows, then columns, then symbols, each sorted.
    pub generators: Vec<(Role, String)>,
    /// One row per triple, with a 1 in each of the three generator columns.
    pub relations: IntMatrix,
    /// The presented group in canonical form.
    pub group: AbelianGroup,
}

/// Presents the group generated by the labels of `p` subject to
/// `row + col + sym = 0` for each triple, and returns its canonical form.
pub fn canonical_group(p: &PartialLatinSquare) -> Result<GroupPresentation, LatinError> {
    if p.is_empty() {
        return Err(LatinError::EmptySquare);
    }
    let mut generators: Vec<(Role, String)> = Vec::new();
    let mut index: BTreeMap<(Role, &str), usize> = BTreeMap::new();
    for role in Role::ALL {
        for label in p.labels(role) {
            index.insert((role, label), generators.len());
            generators.push((role, label.to_string()));
        }
    }
    let mut relations = IntMatrix::zeros(p.len(), generators.len());
    for (i, t) in p.triples().iter().enumerate() {
        for role in Role::ALL {
            let j = index[&(role, t.get(role))];
            relations.set(i, j, BigInt::from(1));
        }
    }
    let group = cokernel(&relations)?;
    Ok(GroupPresentation { generators, relations, group })
}

/// Per-class label replacements for a main-class transformation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelabelMaps {
    pub rows: BTreeMap<String, String>,
    pub cols: BTreeMap<String, String>,
    pub syms: BTreeMap<String, String>,
}

impl RelabelMaps {
    /// Identity relabeling on the labels of `p`.
    pub fn identity(p: &PartialLatinSquare) -> Self {
        let copy = |role: Role| {
            p.labels(role)
                .into_iter()
                .map(|l| (l.to_string(), l.to_string()))
                .collect()
        };
        RelabelMaps { rows: copy(Role::Row), cols: copy(Role::Col), syms: copy(Role::Sym) }
    }

    fn map_for(&self, role: Role) -> &BTreeMap<String, String> {
        match role {
            Role::Row => &self.rows,
            Role::Col => &self.cols,
            Role::Sym => &self.syms,
        }
    }
}

/// Applies a main-class transformation: each coordinate is relabeled within
/// its class, then the coordinates are rearranged so that the new triple is
/// `(relabeled[roles[0]], relabeled[roles[1]], relabeled[roles[2]])`.
///
/// `roles` must mention each role exactly once; each relabeling map must
/// cover the used labels of its class injectively.
pub fn apply_main_class(
    p: &PartialLatinSquare,
    roles: [Role; 3],
    maps: &RelabelMaps,
) -> Result<PartialLatinSquare, LatinError> {
    let mentioned: BTreeSet<Role> = roles.iter().copied().collect();
    if mentioned.len() != 3 {
        return Err(LatinError::RolesNotAPermutation);
    }
    for role in Role::ALL {
        let map = maps.map_for(role);
        let mut images: BTreeSet<&str> = BTreeSet::new();
        for label in p.labels(role) {
            let image = map.get(label).ok_or_else(|| LatinError::RelabelMissing {
                role,
                label: label.to_string(),
            })?;
            if !images.insert(image) {
                return Err(LatinError::RelabelNotInjective { role, label: image.clone() });
            }
        }
    }
    let renamed = |role: Role, t: &Triple| maps.map_for(role)[t.get(role)].clone();
    PartialLatinSquare::new(p.triples().iter().map(|t| {
        Triple::new(renamed(roles[0], t), renamed(roles[1], t), renamed(roles[2], t))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intercalate_white() -> PartialLatinSquare {
        PartialLatinSquare::from_triples(&[
            ("r1", "c1", "s1"),
            ("r1", "c2", "s2"),
            ("r2", "c1", "s2"),
            ("r2", "c2", "s1"),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_two_coordinate_agreement() {
        let err = PartialLatinSquare::from_triples(&[("r1", "c1", "s1"), ("r1", "c1", "s2")])
            .unwrap_err();
        assert!(matches!(err, LatinError::LatinViolation(_, _)));
        let err = PartialLatinSquare::from_triples(&[("r1", "c1", "s1"), ("r1", "c2", "s1")])
            .unwrap_err();
        assert!(matches!(err, LatinError::LatinViolation(_, _)));
        let err = PartialLatinSquare::from_triples(&[("r1", "c1", "s1"), ("r2", "c1", "s1")])
            .unwrap_err();
        assert!(matches!(err, LatinError::LatinViolation(_, _)));
    }

    #[test]
    fn collapses_exact_duplicates() {
        let p = PartialLatinSquare::from_triples(&[("r1", "c1", "s1"), ("r1", "c1", "s1")])
            .unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn accessors_report_labels_and_cells() {
        let p = intercalate_white();
        assert_eq!(p.rows().into_iter().collect::<Vec<_>>(), vec!["r1", "r2"]);
        assert_eq!(p.cols().into_iter().collect::<Vec<_>>(), vec!["c1", "c2"]);
        assert_eq!(p.syms().into_iter().collect::<Vec<_>>(), vec!["s1", "s2"]);
        assert_eq!(p.symbol_at("r2", "c1"), Some("s2"));
        assert_eq!(p.symbol_at("r2", "c3"), None);
        assert_eq!(p.row_symbols("r1").into_iter().collect::<Vec<_>>(), vec!["s1", "s2"]);
    }

    #[test]
    fn single_triple_presents_free_rank_two() {
        let p = PartialLatinSquare::from_triples(&[("r1", "c1", "s1")]).unwrap();
        let pres = canonical_group(&p).unwrap();
        assert_eq!(pres.generators.len(), 3);
        assert_eq!(pres.relations.rows(), 1);
        assert_eq!(pres.group, AbelianGroup::free(2));
    }

    #[test]
    fn intercalate_presents_z2_plus_free_rank_two() {
        let pres = canonical_group(&intercalate_white()).unwrap();
        assert_eq!(pres.group.free_rank(), 2);
        assert_eq!(pres.group.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(pres.group.to_string(), "Z^2 + Z/2");
    }

    #[test]
    fn canonical_group_rejects_empty_square() {
        let p = PartialLatinSquare::new([]).unwrap();
        assert_eq!(canonical_group(&p).unwrap_err(), LatinError::EmptySquare);
    }

    #[test]
    fn main_class_transpose_swaps_rows_and_columns() {
        let p = intercalate_white();
        let maps = RelabelMaps::identity(&p);
        let q = apply_main_class(&p, [Role::Col, Role::Row, Role::Sym], &maps).unwrap();
        assert_eq!(q.symbol_at("c2", "r1"), Some("s2"));
        assert_eq!(q.len(), p.len());
    }

    #[test]
    fn main_class_preserves_canonical_group() {
        let p = intercalate_white();
        let mut maps = RelabelMaps::identity(&p);
        maps.syms.insert("s1".into(), "x".into());
        maps.syms.insert("s2".into(), "y".into());
        let q = apply_main_class(&p, [Role::Sym, Role::Row, Role::Col], &maps).unwrap();
        let gp = canonical_group(&p).unwrap().group;
        let gq = canonical_group(&q).unwrap().group;
        assert_eq!(gp, gq);
    }

    #[test]
    fn main_class_rejects_bad_roles_and_maps() {
        let p = intercalate_white();
        let maps = RelabelMaps::identity(&p);
        let err = apply_main_class(&p, [Role::Row, Role::Row, Role::Sym], &maps).unwrap_err();
        assert_eq!(err, LatinError::RolesNotAPermutation);

        let mut missing = RelabelMaps::identity(&p);
        missing.rows.remove("r2");
        let err = apply_main_class(&p, [Role::Row, Role::Col, Role::Sym], &missing).unwrap_err();
        assert!(matches!(err, LatinError::RelabelMissing { role: Role::Row, .. }));

        let mut squash = RelabelMaps::identity(&p);
        squash.cols.insert("c2".into(), "c1".into());
        let err = apply_main_class(&p, [Role::Row, Role::Col, Role::Sym], &squash).unwrap_err();
        assert!(matches!(err, LatinError::RelabelNotInjective { role: Role::Col, .. }));
    }
}
