//! Exhaustive enumeration of spherical latin bitrades up to relabeling.
//!
//! White halves grow triple by triple in sorted order, with labels drawn in
//! first-use order from a bounded grid; black halves are completed by a
//! small constraint search (same cells, different symbol per cell, equal
//! symbol sets per line).  Every candidate pair is re-validated, filtered to
//! connected, separated, genus-zero bitrades, and deduplicated by its
//! canonical relabeling: the lexicographically smallest sorted triple lists
//! reachable by renaming rows, columns, and symbols independently.

use std::collections::{BTreeMap, BTreeSet};

use crate::latin::bitrade::LatinBitrade;
use crate::latin::square::{PartialLatinSquare, Triple};
use crate::latin::LatinError;

/// Default ceiling on the enumeration size.
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

/// Tuning knobs for [`enumerate_spherical_bitrades`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Hard ceiling on `max_size`; requests above it are rejected.
    pub size_cap: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { size_cap: DEFAULT_ENUMERATION_CAP }
    }
}

/// The outcome of an enumeration, in deterministic order.
#[derive(Clone, Debug)]
pub struct EnumerationSummary {
    /// All spherical bitrades of size at most the requested bound, one per
    /// relabeling class, sorted by size and then by canonical form.
    pub bitrades: Vec<LatinBitrade>,
    /// Number of bitrades of each size.
    pub counts_by_size: BTreeMap<usize, usize>,
    /// Number of bitrades per canonical group (displayed form).
    pub group_tally: BTreeMap<String, usize>,
}

type IdxTriple = [usize; 3];

/// Enumerates every spherical latin bitrade with at most `max_size` triples
/// per half, up to independent relabeling of rows, columns, and symbols
/// (ordered pairs: the two halves are not interchangeable).
pub fn enumerate_spherical_bitrades(
    max_size: usize,
    options: &EnumerationOptions,
) -> Result<EnumerationSummary, LatinError> {
    if max_size > options.size_cap {
        return Err(LatinError::EnumerationBoundExceeded {
            requested: max_size,
            cap: options.size_cap,
        });
    }
    let mut found: BTreeSet<(Vec<IdxTriple>, Vec<IdxTriple>)> = BTreeSet::new();
    if max_size >= 4 {
        let mut gen = Generator::new(max_size);
        gen.grow(&mut found);
    }

    let mut entries: Vec<(usize, Vec<IdxTriple>, Vec<IdxTriple>)> =
        found.into_iter().map(|(w, b)| (w.len(), w, b)).collect();
    entries.sort();

    let mut bitrades = Vec::new();
    let mut counts_by_size = BTreeMap::new();
    let mut group_tally = BTreeMap::new();
    for (size, w, b) in entries {
        let bt = LatinBitrade::new(materialize(&w), materialize(&b))
            .expect("enumerated pairs were validated before canonicalization");
        *counts_by_size.entry(size).or_insert(0usize) += 1;
        let group = bt.canonical_group()?;
        *group_tally.entry(group.to_string()).or_insert(0usize) += 1;
        bitrades.push(bt);
    }
    Ok(EnumerationSummary { bitrades, counts_by_size, group_tally })
}

/// Builds a square from index triples using the canonical label scheme.
fn materialize(triples: &[IdxTriple]) -> PartialLatinSquare {
    PartialLatinSquare::new(triples.iter().map(|t| {
        Triple::new(format!("r{}", t[0] + 1), format!("c{}", t[1] + 1), format!("s{}", t[2] + 1))
    }))
    .expect("index triples satisfy the latin property")
}

/// Depth-first growth of white halves.
struct Generator {
    max_size: usize,
    /// Most labels any class can use: every line of a bitrade covers at
    /// least two cells, so a class has at most `max_size / 2` labels.
    class_cap: usize,
    triples: Vec<IdxTriple>,
    occ: [Vec<usize>; 3],
    pairs: [BTreeSet<(usize, usize)>; 3], // (row,col), (row,sym), (col,sym)
}

impl Generator {
    fn new(max_size: usize) -> Self {
        Generator {
            max_size,
            class_cap: max_size / 2 + 1,
            triples: Vec::new(),
            occ: [Vec::new(), Vec::new(), Vec::new()],
            pairs: [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()],
        }
    }

    fn labels_used(&self) -> usize {
        self.occ.iter().map(Vec::len).sum()
    }

    /// Labels still needing a second occurrence.
    fn deficit(&self) -> usize {
        self.occ.iter().flatten().filter(|&&n| n == 1).count()
    }

    fn push(&mut self, t: IdxTriple) {
        for (class, &label) in t.iter().enumerate() {
            if label == self.occ[class].len() {
                self.occ[class].push(0);
            }
            self.occ[class][label] += 1;
        }
        self.pairs[0].insert((t[0], t[1]));
        self.pairs[1].insert((t[0], t[2]));
        self.pairs[2].insert((t[1], t[2]));
        self.triples.push(t);
    }

    fn pop(&mut self) {
        let t = self.triples.pop().expect("push/pop are balanced");
        self.pairs[0].remove(&(t[0], t[1]));
        self.pairs[1].remove(&(t[0], t[2]));
        self.pairs[2].remove(&(t[1], t[2]));
        for (class, &label) in t.iter().enumerate() {
            self.occ[class][label] -= 1;
            if self.occ[class][label] == 0 && label + 1 == self.occ[class].len() {
                self.occ[class].pop();
            }
        }
    }

    fn grow(&mut self, found: &mut BTreeSet<(Vec<IdxTriple>, Vec<IdxTriple>)>) {
        let size = self.triples.len();
        // A spherical bitrade uses exactly size + 2 labels, each at least
        // twice; only such whites can complete.
        if size >= 4
            && self.labels_used() == size + 2
            && self.occ.iter().flatten().all(|&n| n >= 2)
        {
            self.complete(found);
        }
        if size == self.max_size {
            return;
        }
        let floor = self.triples.last().copied().map_or([0, 0, 0], bump);
        let bounds = [
            self.occ[0].len().min(self.class_cap - 1),
            self.occ[1].len().min(self.class_cap - 1),
            self.occ[2].len().min(self.class_cap - 1),
        ];
        for r in 0..=bounds[0] {
            for c in 0..=bounds[1] {
                if self.pairs[0].contains(&(r, c)) {
                    continue;
                }
                for s in 0..=bounds[2] {
                    let t = [r, c, s];
                    if t < floor
                        || self.pairs[1].contains(&(r, s))
                        || self.pairs[2].contains(&(c, s))
                    {
                        continue;
                    }
                    self.push(t);
                    let remaining = self.max_size - self.triples.len();
                    if self.labels_used() <= self.max_size + 2
                        && self.deficit() <= 3 * remaining
                    {
                        self.grow(found);
                    }
                    self.pop();
                }
            }
        }
    }

    /// Completes the current white half with every possible black half and
    /// records the spherical results.
    fn complete(&self, found: &mut BTreeSet<(Vec<IdxTriple>, Vec<IdxTriple>)>) {
        let white = self.triples.clone();
        let mut row_syms: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        let mut col_syms: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for t in &white {
            row_syms.entry(t[0]).or_default().insert(t[2]);
            col_syms.entry(t[1]).or_default().insert(t[2]);
        }
        let domains: Vec<Vec<usize>> = white
            .iter()
            .map(|t| {
                row_syms[&t[0]]
                    .intersection(&col_syms[&t[1]])
                    .copied()
                    .filter(|&s| s != t[2])
                    .collect()
            })
            .collect();
        let mut assignment = vec![usize::MAX; white.len()];
        let mut used_row: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut used_col: BTreeSet<(usize, usize)> = BTreeSet::new();
        complete_rec(
            &white,
            &domains,
            0,
            &mut assignment,
            &mut used_row,
            &mut used_col,
            &mut |black: Vec<IdxTriple>| {
                let w = materialize(&white);
                let b = materialize(&black);
                if let Ok(bt) = LatinBitrade::new(w, b) {
                    if bt.is_spherical() {
                        found.insert(canonical_pair(&white, &black));
                    }
                }
            },
        );
    }
}

/// Smallest triple strictly greater than `t` (sorted growth keeps each white
/// half duplicate-free and each prefix canonicalizable).
fn bump(t: IdxTriple) -> IdxTriple {
    [t[0], t[1], t[2] + 1]
}

fn complete_rec(
    white: &[IdxTriple],
    domains: &[Vec<usize>],
    i: usize,
    assignment: &mut Vec<usize>,
    used_row: &mut BTreeSet<(usize, usize)>,
    used_col: &mut BTreeSet<(usize, usize)>,
    emit: &mut impl FnMut(Vec<IdxTriple>),
) {
    if i == white.len() {
        let black: Vec<IdxTriple> = white
            .iter()
            .zip(assignment.iter())
            .map(|(t, &s)| [t[0], t[1], s])
            .collect();
        emit(black);
        return;
    }
    let [r, c, _] = white[i];
    for &s in &domains[i] {
        if used_row.contains(&(r, s)) || used_col.contains(&(c, s)) {
            continue;
        }
        used_row.insert((r, s));
        used_col.insert((c, s));
        assignment[i] = s;
        complete_rec(white, domains, i + 1, assignment, used_row, used_col, emit);
        used_row.remove(&(r, s));
        used_col.remove(&(c, s));
    }
}

/// The canonical form of an ordered pair: relabel each class so that the
/// sorted white list is lexicographically smallest, breaking ties by the
/// sorted black list.
fn canonical_pair(white: &[IdxTriple], black: &[IdxTriple]) -> (Vec<IdxTriple>, Vec<IdxTriple>) {
    let dims = [
        1 + white.iter().map(|t| t[0]).max().expect("nonempty"),
        1 + white.iter().map(|t| t[1]).max().expect("nonempty"),
        1 + white.iter().map(|t| t[2]).max().expect("nonempty"),
    ];
    let mut best: Option<(Vec<IdxTriple>, Vec<IdxTriple>)> = None;
    let mut state = CanonState {
        white,
        black,
        maps: [vec![None; dims[0]], vec![None; dims[1]], vec![None; dims[2]]],
        next: [0; 3],
        used: vec![false; white.len()],
        placed: Vec::with_capacity(white.len()),
    };
    canon_rec(&mut state, &mut best);
    best.expect("at least one relabeling exists")
}

struct CanonState<'a> {
    white: &'a [IdxTriple],
    black: &'a [IdxTriple],
    maps: [Vec<Option<usize>>; 3],
    next: [usize; 3],
    used: Vec<bool>,
    placed: Vec<IdxTriple>,
}

impl CanonState<'_> {
    fn project(&self, t: &IdxTriple) -> IdxTriple {
        [
            self.maps[0][t[0]].unwrap_or(self.next[0]),
            self.maps[1][t[1]].unwrap_or(self.next[1]),
            self.maps[2][t[2]].unwrap_or(self.next[2]),
        ]
    }
}

fn canon_rec(state: &mut CanonState<'_>, best: &mut Option<(Vec<IdxTriple>, Vec<IdxTriple>)>) {
    if state.placed.len() == state.white.len() {
        let mut black: Vec<IdxTriple> = state
            .black
            .iter()
            .map(|t| {
                [
                    state.maps[0][t[0]].expect("black labels appear in white"),
                    state.maps[1][t[1]].expect("black labels appear in white"),
                    state.maps[2][t[2]].expect("black labels appear in white"),
                ]
            })
            .collect();
        black.sort_unstable();
        let candidate = (state.placed.clone(), black);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            *best = Some(candidate);
        }
        return;
    }
    let minimum = (0..state.white.len())
        .filter(|&i| !state.used[i])
        .map(|i| state.project(&state.white[i]))
        .min()
        .expect("unplaced triples remain");
    // Prefix pruning: once the prefix exceeds the best known form it cannot
    // recover, since later positions only append.
    if let Some((best_w, _)) = best {
        let pos = state.placed.len();
        if minimum > best_w[pos] {
            return;
        }
    }
    for i in 0..state.white.len() {
        if state.used[i] || state.project(&state.white[i]) != minimum {
            continue;
        }
        let t = state.white[i];
        let mut fresh = [false; 3];
        for class in 0..3 {
            if state.maps[class][t[class]].is_none() {
                state.maps[class][t[class]] = Some(state.next[class]);
                state.next[class] += 1;
                fresh[class] = true;
            }
        }
        state.used[i] = true;
        state.placed.push(minimum);
        canon_rec(state, best);
        state.placed.pop();
        state.used[i] = false;
        for class in 0..3 {
            if fresh[class] {
                state.maps[class][t[class]] = None;
                state.next[class] -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_four_finds_exactly_the_intercalate() {
        let summary = enumerate_spherical_bitrades(4, &EnumerationOptions::default()).unwrap();
        assert_eq!(summary.bitrades.len(), 1);
        assert_eq!(summary.counts_by_size.get(&4), Some(&1));
        assert_eq!(summary.group_tally.get("Z/2"), Some(&1));
        let bt = &summary.bitrades[0];
        assert_eq!(bt.size(), 4);
        assert!(bt.is_spherical());
        assert_eq!(bt.white().rows().len(), 2);
    }

    #[test]
    fn size_six_adds_the_two_by_three_trades() {
        let summary = enumerate_spherical_bitrades(6, &EnumerationOptions::default()).unwrap();
        assert_eq!(summary.counts_by_size.get(&4), Some(&1));
        let six = summary.counts_by_size.get(&6).copied().unwrap_or(0);
        assert!(six > 0, "spherical bitrades of size six exist");
        assert!(!summary.counts_by_size.contains_key(&5));
        for bt in &summary.bitrades {
            assert!(bt.is_spherical());
        }
        // Group sizes match the determinant scale of the trades found.
        assert!(summary.group_tally.contains_key("Z/3"));
    }

    #[test]
    fn requests_beyond_the_cap_are_rejected() {
        let err = enumerate_spherical_bitrades(10, &EnumerationOptions::default()).unwrap_err();
        assert_eq!(err, LatinError::EnumerationBoundExceeded { requested: 10, cap: 9 });
        let loose = EnumerationOptions { size_cap: 12 };
        assert!(enumerate_spherical_bitrades(4, &loose).is_ok());
    }

    #[test]
    fn canonical_pair_is_invariant_under_relabeling() {
        // The intercalate with rows and symbols renamed.
        let w1 = vec![[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]];
        let b1 = vec![[0, 0, 1], [0, 1, 0], [1, 0, 0], [1, 1, 1]];
        let w2 = vec![[1, 0, 1], [1, 1, 0], [0, 0, 0], [0, 1, 1]];
        let b2 = vec![[1, 0, 0], [1, 1, 1], [0, 0, 1], [0, 1, 0]];
        assert_eq!(canonical_pair(&w1, &b1), canonical_pair(&w2, &b2));
    }
}
