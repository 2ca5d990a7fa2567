//! Chain constructions for groups with extra prime summands.
//!
//! `build_primes(p, [a_1, …, a_k], n)` realises `Z/pⁿ ⊕ ⊕ᵢ Z/(p·aᵢ)` by
//! rerouting `n` of the single arcs of the plain chain (`build_composites`
//! with `m = p`) through fresh vertices of total degree `2p`.  Each reroute
//! replaces one arc `u → w` by a fresh vertex `z`, a bundle of `p − 1` pairs
//! between `u` and `z`, one extra arc `u → z`, and one arc `z → w`; the net
//! effect on the sandpile group is one extra `Z/p` summand.
//!
//! The reroute schedule is canonical: the closing arc `X` is rerouted first
//! (through `ε_{1,0}`), then the levels are consumed in order, each level `i`
//! alternating between its backward slots (`δ_{i,j}`, replacing `g_j` of
//! `C_i`) and its forward slots (`ε_{i,j}`, replacing `f_j` of `C_i`), with
//! backward slots filled first.

use super::composites::{build_chain, RewirePlan};
use super::{FamilyError, FamilyInstance};
use crate::zlinalg::group_from_cyclic_orders;
use num_bigint::BigInt;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Largest number of reroutes the chain on multipliers `a` supports.
pub(crate) fn max_extra_summands(a: &[u64]) -> usize {
    1 + 2 * a.iter().map(|&ai| (ai - 1) as usize).sum::<usize>()
}

/// Builds the rerouted chain realising `Z/pⁿ ⊕ ⊕ᵢ Z/(p·aᵢ)`.
///
/// Requires a prime `p`, a nonempty list of multipliers with every `aᵢ ≥ 2`,
/// and `n` at most `1 + 2·Σᵢ(aᵢ − 1)`.  With `n = 0` the digraph and its
/// rotation system are identical to the plain chain's.
pub fn build_primes(p: u64, a: &[u64], n: usize) -> Result<FamilyInstance, FamilyError> {
    if !is_prime(p) {
        return Err(FamilyError::NotPrime(p));
    }
    if a.is_empty() {
        return Err(FamilyError::InvalidParameter {
            name: "a",
            value: "[]".to_string(),
            requirement: "at least one multiplier is needed",
        });
    }
    if let Some(bad) = a.iter().find(|&&ai| ai < 2) {
        return Err(FamilyError::InvalidParameter {
            name: "a",
            value: bad.to_string(),
            requirement: "every multiplier must be at least 2",
        });
    }
    let maximum = max_extra_summands(a);
    if n > maximum {
        return Err(FamilyError::LevelOutOfRange { requested: n, maximum });
    }

    let k = a.len();
    let mut plan = RewirePlan::none(k);
    if n > 0 {
        plan.eps10 = true;
        let mut remaining = n - 1;
        for (i, &ai) in a.iter().enumerate() {
            let capacity = 2 * (ai - 1) as usize;
            let here = remaining.min(capacity);
            plan.deltas[i] = here.div_ceil(2);
            plan.epsilons[i] = here / 2;
            remaining -= here;
        }
        debug_assert_eq!(remaining, 0);
    }

    let embedding = build_chain(p, a, &plan)?;
    let orders = std::iter::repeat_n(BigInt::from(p), n)
        .chain(a.iter().map(|&ai| BigInt::from(p * ai)));
    let group = group_from_cyclic_orders(orders)?;
    Ok(FamilyInstance::new(format!("primes p={p} a={a:?} n={n}"), embedding, group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_composites;
    use crate::zlinalg::{AbelianGroup, IntMatrix};

    #[test]
    fn one_reroute_adds_one_prime_summand() {
        let inst = build_primes(2, &[2], 1).unwrap();
        // Vertices a1, g1, e1.0 after removing the sink a0.
        let expected = IntMatrix::from_i64_rows(&[
            &[2, -1, 0],
            &[-2, 3, 0],
            &[0, -1, 2],
        ])
        .unwrap();
        assert_eq!(inst.digraph().reduced_laplacian("a0").unwrap(), expected);
        assert_eq!(
            inst.digraph().sandpile_group().unwrap(),
            AbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(4)]).unwrap()
        );
        let report = inst.embedding().trace_faces();
        assert_eq!(report.genus, 0);
        assert!(report.all_directed);
    }

    #[test]
    fn zero_reroutes_reproduce_the_plain_chain_exactly() {
        let rerouted = build_primes(3, &[3, 2], 0).unwrap();
        let plain = build_composites(3, &[3, 2]).unwrap();
        assert_eq!(rerouted.digraph().labels(), plain.digraph().labels());
        assert_eq!(rerouted.digraph().arcs(), plain.digraph().arcs());
        for label in plain.digraph().labels() {
            assert_eq!(
                rerouted.embedding().rotation(label).unwrap(),
                plain.embedding().rotation(label).unwrap(),
                "rotation at {label}"
            );
        }
    }

    #[test]
    fn every_reroute_count_realises_its_group_on_a_sphere() {
        let cases: &[(u64, &[u64])] = &[(2, &[2]), (3, &[2]), (2, &[2, 2]), (2, &[3]), (5, &[2])];
        for &(p, a) in cases {
            for n in 0..=max_extra_summands(a) {
                let inst = build_primes(p, a, n).unwrap();
                let orders = std::iter::repeat_n(BigInt::from(p), n)
                    .chain(a.iter().map(|&ai| BigInt::from(p * ai)));
                let expected = group_from_cyclic_orders(orders).unwrap();
                assert_eq!(
                    inst.digraph().sandpile_group().unwrap(),
                    expected,
                    "group of p={p} a={a:?} n={n}"
                );
                let report = inst.embedding().trace_faces();
                assert_eq!(report.genus, 0, "genus of p={p} a={a:?} n={n}");
                assert!(report.all_directed, "faces of p={p} a={a:?} n={n}");
            }
        }
    }

    #[test]
    fn rejects_parameters_outside_the_family() {
        assert_eq!(build_primes(4, &[2], 0).unwrap_err(), FamilyError::NotPrime(4));
        assert_eq!(
            build_primes(2, &[2], 4).unwrap_err(),
            FamilyError::LevelOutOfRange { requested: 4, maximum: 3 }
        );
        assert!(matches!(
            build_primes(2, &[1], 0),
            Err(FamilyError::InvalidParameter { name: "a", .. })
        ));
        assert!(matches!(
            build_primes(2, &[], 0),
            Err(FamilyError::InvalidParameter { name: "a", .. })
        ));
    }
}
