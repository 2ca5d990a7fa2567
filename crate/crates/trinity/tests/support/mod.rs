//! Independent oracles shared by the integration suites.
//!
//! The Smith-form oracle below deliberately avoids the library's pivoting
//! reduction.  It computes determinant divisors the slow, textbook way —
//! the k-th divisor is the gcd of every k-by-k minor, and each minor is
//! evaluated by cofactor expansion — so agreement with `snf_diagonal` is
//! evidence, not circularity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use trinity::zlinalg::IntMatrix;

/// Determinant of a square block by first-row cofactor expansion.
fn cofactor_determinant(block: &[Vec<BigInt>]) -> BigInt {
    let n = block.len();
    match n {
        0 => BigInt::one(),
        1 => block[0][0].clone(),
        _ => {
            let mut total = BigInt::zero();
            for (j, entry) in block[0].iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = block[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = entry * cofactor_determinant(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

/// All k-element index subsets of `0..n`, in lexicographic order.
fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn extend(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            extend(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// gcd of all k-by-k minors of `a`; zero when every such minor vanishes.
fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
    let mut divisor = BigInt::zero();
    for rows in index_subsets(a.rows(), k) {
        for cols in index_subsets(a.cols(), k) {
            let block: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| a.get(r, c).clone()).collect())
                .collect();
            divisor = divisor.gcd(&cofactor_determinant(&block));
            if divisor.is_one() {
                return divisor;
            }
        }
    }
    divisor
}

/// Invariant-factor diagonal predicted by determinant divisors: the k-th
/// factor is d_k / d_{k-1}, and factors past the rank are zero.  The result
/// has length `min(rows, cols)`, matching `snf_diagonal`.
pub fn smith_diagonal_by_minor_gcds(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows().min(a.cols());
    let mut factors = Vec::with_capacity(n);
    let mut previous = BigInt::one();
    for k in 1..=n {
        let divisor = minor_gcd(a, k);
        if divisor.is_zero() {
            factors.push(BigInt::zero());
        } else {
            factors.push(&divisor / &previous);
            previous = divisor;
        }
    }
    factors
}
