//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::snf_diagonal;

/// Errors from abelian group construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// Cyclic orders must be strictly positive.
    NonPositiveOrder(BigInt),
    /// Invariant factors must each be at least 2 and form a divisibility chain.
    NotCanonical(String),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NonPositiveOrder(n) => write!(f, "cyclic order must be positive, got {n}"),
            GroupError::NotCanonical(why) => write!(f, "not a canonical factor list: {why}"),
        }
    }
}

impl std::error::Error for GroupError {}

/// A finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// with `2 <= d_1 | d_2 | ... | d_k`. Equality of values is isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    /// The trivial group.
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, invariant_factors: Vec::new() }
    }

    /// Free abelian group of the given rank.
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, invariant_factors: Vec::new() }
    }

    /// Cyclic group of order `n >= 1`.
    pub fn cyclic(n: u64) -> Self {
        group_from_cyclic_orders(std::iter::once(BigInt::from(n)))
            .expect("positive literal order")
    }

    /// Builds from an already-canonical factor list, validating the chain.
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self, GroupError> {
        let two = BigInt::from(2);
        for d in &invariant_factors {
            if *d < two {
                return Err(GroupError::NotCanonical(format!("factor {d} is below 2")));
            }
        }
        for w in invariant_factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(GroupError::NotCanonical(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(AbelianGroup { free_rank, invariant_factors })
    }

    /// Internal constructor for factor lists that are canonical by
    /// construction (e.g. straight off a Smith diagonal).
    pub(crate) fn from_canonical_parts(free_rank: usize, invariant_factors: Vec<BigInt>) -> Self {
        AbelianGroup { free_rank, invariant_factors }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup: the product of the invariant factors.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product::<BigInt>().max(BigInt::one())
    }

    /// Group order, when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// The torsion subgroup (free part dropped).
    pub fn torsion(&self) -> AbelianGroup {
        AbelianGroup { free_rank: 0, invariant_factors: self.invariant_factors.clone() }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::with_capacity(1 + self.invariant_factors.len());
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical form of a direct sum of cyclic groups of the given orders.
/// Orders equal to 1 contribute nothing; orders below 1 are rejected.
pub fn group_from_cyclic_orders<I>(orders: I) -> Result<AbelianGroup, GroupError>
where
    I: IntoIterator<Item = BigInt>,
{
    let orders: Vec<BigInt> = orders.into_iter().collect();
    for n in &orders {
        if *n < BigInt::one() {
            return Err(GroupError::NonPositiveOrder(n.clone()));
        }
    }
    let nontrivial: Vec<BigInt> = orders.into_iter().filter(|n| !n.is_one()).collect();
    if nontrivial.is_empty() {
        return Ok(AbelianGroup::trivial());
    }
    // Smith form of the diagonal relation matrix merges the orders into a
    // divisibility chain.
    let k = nontrivial.len();
    let mut rel = IntMatrix::zeros(k, k);
    for (i, n) in nontrivial.into_iter().enumerate() {
        rel.set(i, i, n);
    }
    let diag = snf_diagonal(&rel).expect("nonempty diagonal matrix");
    let factors = diag.into_iter().filter(|d| *d > BigInt::one()).collect();
    Ok(AbelianGroup::from_canonical_parts(0, factors))
}

/// Isomorphism test: canonical forms are equal exactly when the groups are
/// isomorphic.
pub fn groups_isomorphic(a: &AbelianGroup, b: &AbelianGroup) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(ns: &[u64]) -> AbelianGroup {
        group_from_cyclic_orders(ns.iter().map(|&n| BigInt::from(n))).unwrap()
    }

    #[test]
    fn cyclic_orders_merge_into_chain() {
        assert_eq!(orders(&[4, 6]).invariant_factors(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(orders(&[1, 1]), AbelianGroup::trivial());
        assert_eq!(orders(&[2, 3]), AbelianGroup::cyclic(6));
        assert_eq!(orders(&[2, 2]).to_string(), "Z/2 + Z/2");
    }

    #[test]
    fn rejects_nonpositive_orders() {
        let err = group_from_cyclic_orders(std::iter::once(BigInt::zero()));
        assert!(matches!(err, Err(GroupError::NonPositiveOrder(_))));
    }

    #[test]
    fn canonical_chain_is_validated() {
        assert!(AbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(4)]).is_ok());
        assert!(AbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(AbelianGroup::new(0, vec![BigInt::one()]).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        let mut g = orders(&[2]);
        g = AbelianGroup::from_canonical_parts(2, g.invariant_factors().to_vec());
        assert_eq!(g.to_string(), "Z^2 + Z/2");
        assert_eq!(orders(&[4, 4]).to_string(), "Z/4 + Z/4");
    }

    #[test]
    fn torsion_order_multiplies_factors() {
        assert_eq!(orders(&[4, 6]).torsion_order(), BigInt::from(24));
        assert_eq!(AbelianGroup::trivial().torsion_order(), BigInt::one());
        assert_eq!(AbelianGroup::free(2).order(), None);
        assert_eq!(orders(&[5]).order(), Some(BigInt::from(5)));
    }

    #[test]
    fn isomorphism_is_equality_of_canonical_forms() {
        assert!(groups_isomorphic(&orders(&[2, 12]), &orders(&[4, 6])));
        assert!(!groups_isomorphic(&orders(&[8]), &orders(&[2, 4])));
    }
}
