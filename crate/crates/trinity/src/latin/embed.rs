//! Embedding a partial latin square into a finite abelian group.
//!
//! An embedding assigns a group element to every row, column, and symbol,
//! injectively within each class, so that `row + col = sym` holds for every
//! triple.  The search normalizes the first row and first column to zero,
//! propagates forced values through triples with two known coordinates, and
//! backtracks over group elements when stuck.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::latin::square::{PartialLatinSquare, Role};
use crate::latin::LatinError;
use crate::zlinalg::AbelianGroup;

/// A witness that a partial latin square embeds in a finite abelian group,
/// written additively with one coordinate per invariant factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    factors: Vec<BigInt>,
    pub rows: BTreeMap<String, Vec<BigInt>>,
    pub cols: BTreeMap<String, Vec<BigInt>>,
    pub syms: BTreeMap<String, Vec<BigInt>>,
}

impl Embedding {
    /// The invariant factors of the target group.
    pub fn target_factors(&self) -> &[BigInt] {
        &self.factors
    }

    fn class(&self, role: Role) -> &BTreeMap<String, Vec<BigInt>> {
        match role {
            Role::Row => &self.rows,
            Role::Col => &self.cols,
            Role::Sym => &self.syms,
        }
    }

    /// Checks the witness against `p`: full injective assignments for every
    /// class and `row + col = sym` in the target group for every triple.
    pub fn satisfies(&self, p: &PartialLatinSquare) -> bool {
        for role in Role::ALL {
            let assigned = self.class(role);
            let labels = p.labels(role);
            if labels.len() != assigned.len()
                || !labels.iter().all(|l| assigned.contains_key(*l))
            {
                return false;
            }
            let images: BTreeSet<&Vec<BigInt>> = assigned.values().collect();
            if images.len() != assigned.len() {
                return false;
            }
        }
        p.triples().iter().all(|t| {
            let sum = add_mod(&self.rows[&t.row], &self.cols[&t.col], &self.factors);
            sum == self.syms[&t.sym]
        })
    }
}

/// Element arithmetic modulo the invariant factors.
fn add_mod(a: &[BigInt], b: &[BigInt], factors: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .zip(b)
        .zip(factors)
        .map(|((x, y), m)| (x + y) % m)
        .collect()
}

fn sub_mod(a: &[BigInt], b: &[BigInt], factors: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .zip(b)
        .zip(factors)
        .map(|((x, y), m)| ((x - y) % m + m) % m)
        .collect()
}

/// All group elements in mixed-radix order; the group order is small
/// wherever the search is used, and the caller has already bounded it.
fn all_elements(factors: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut elems = vec![vec![BigInt::zero(); factors.len()]];
    for (i, m) in factors.iter().enumerate() {
        let mut next = Vec::new();
        for e in &elems {
            let mut v = BigInt::zero();
            while &v < m {
                let mut e2 = e.clone();
                e2[i] = v.clone();
                next.push(e2);
                v += 1;
            }
        }
        elems = next;
    }
    elems
}

#[derive(Clone)]
struct SearchState {
    assigned: [BTreeMap<String, Vec<BigInt>>; 3],
    used: [BTreeSet<Vec<BigInt>>; 3],
}

impl SearchState {
    fn role_slot(role: Role) -> usize {
        match role {
            Role::Row => 0,
            Role::Col => 1,
            Role::Sym => 2,
        }
    }

    /// Records `label = value`; fails on an injectivity clash or a
    /// contradictory earlier assignment.
    fn assign(&mut self, role: Role, label: &str, value: Vec<BigInt>) -> bool {
        let slot = Self::role_slot(role);
        if let Some(prev) = self.assigned[slot].get(label) {
            return *prev == value;
        }
        if !self.used[slot].insert(value.clone()) {
            return false;
        }
        self.assigned[slot].insert(label.to_string(), value);
        true
    }

    fn get(&self, role: Role, label: &str) -> Option<&Vec<BigInt>> {
        self.assigned[Self::role_slot(role)].get(label)
    }
}

/// Searches for an embedding of `p` into `group`.
///
/// The target must be finite; `Ok(None)` means no embedding exists (in
/// particular whenever some label class is larger than the group).
pub fn embed_search(
    p: &PartialLatinSquare,
    group: &AbelianGroup,
) -> Result<Option<Embedding>, LatinError> {
    if p.is_empty() {
        return Err(LatinError::EmptySquare);
    }
    if !group.is_finite() {
        return Err(LatinError::InfiniteEmbeddingTarget);
    }
    let factors = group.invariant_factors().to_vec();
    let order = group.torsion_order();
    for role in Role::ALL {
        if BigInt::from(p.labels(role).len()) > order {
            return Ok(None);
        }
    }

    let elements = all_elements(&factors);
    let zero = vec![BigInt::zero(); factors.len()];
    let mut state = SearchState {
        assigned: [BTreeMap::new(), BTreeMap::new(), BTreeMap::new()],
        used: [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()],
    };
    // Any embedding can be translated so that the first row and first
    // column sit at zero, so the normalization loses no solutions.
    let first_row = p.rows().into_iter().next().expect("nonempty").to_string();
    let first_col = p.cols().into_iter().next().expect("nonempty").to_string();
    let ok = state.assign(Role::Row, &first_row, zero.clone())
        && state.assign(Role::Col, &first_col, zero);
    debug_assert!(ok, "zero normalization is consistent on fresh state");

    Ok(search(p, &factors, &elements, state).map(|state| {
        let [rows, cols, syms] = state.assigned;
        Embedding { factors, rows, cols, syms }
    }))
}

/// Propagates forced values; `None` signals a contradiction.
fn propagate(
    p: &PartialLatinSquare,
    factors: &[BigInt],
    mut state: SearchState,
) -> Option<SearchState> {
    loop {
        let mut progressed = false;
        for t in p.triples() {
            let r = state.get(Role::Row, &t.row).cloned();
            let c = state.get(Role::Col, &t.col).cloned();
            let s = state.get(Role::Sym, &t.sym).cloned();
            let ok = match (r, c, s) {
                (Some(r), Some(c), None) => {
                    progressed = true;
                    state.assign(Role::Sym, &t.sym, add_mod(&r, &c, factors))
                }
                (Some(r), None, Some(s)) => {
                    progressed = true;
                    state.assign(Role::Col, &t.col, sub_mod(&s, &r, factors))
                }
                (None, Some(c), Some(s)) => {
                    progressed = true;
                    state.assign(Role::Row, &t.row, sub_mod(&s, &c, factors))
                }
                (Some(r), Some(c), Some(s)) => add_mod(&r, &c, factors) == s,
                _ => true,
            };
            if !ok {
                return None;
            }
        }
        if !progressed {
            return Some(state);
        }
    }
}

fn search(
    p: &PartialLatinSquare,
    factors: &[BigInt],
    elements: &[Vec<BigInt>],
    state: SearchState,
) -> Option<SearchState> {
    let state = propagate(p, factors, state)?;
    let unassigned = Role::ALL.into_iter().find_map(|role| {
        p.labels(role)
            .into_iter()
            .find(|l| state.get(role, l).is_none())
            .map(|l| (role, l.to_string()))
    });
    let (role, label) = match unassigned {
        None => return Some(state),
        Some(pick) => pick,
    };
    for value in elements {
        let mut branch = state.clone();
        if !branch.assign(role, &label, value.clone()) {
            continue;
        }
        if let Some(solution) = search(p, factors, elements, branch) {
            return Some(solution);
        }
    }
    None
}
