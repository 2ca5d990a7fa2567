//! Smith normal form over the integers.
//!
//! The reduction repeatedly moves the smallest-magnitude nonzero entry of the
//! working submatrix into pivot position and clears its row and column with
//! division-with-remainder steps; when a remaining entry is not divisible by
//! the pivot, its row is folded into the pivot row so the next sweep shrinks
//! the pivot. That strategy keeps intermediate entries small without needing
//! modular tricks, and every step is an elementary unimodular operation, so
//! the transforms stay exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::group::AbelianGroup;
use super::matrix::{IntMatrix, MatrixError};

/// Outcome of a Smith reduction: `u * a * v = s` with `u`, `v` unimodular,
/// `s` diagonal with non-negative entries, each dividing the next, zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal of `s`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.s.diagonal()
    }
}

/// Smith normal form with both unimodular transforms.
pub fn snf(a: &IntMatrix) -> Result<SnfResult, MatrixError> {
    let (s, u, v) = smith(a, true)?;
    Ok(SnfResult { s, u: u.expect("transforms requested"), v: v.expect("transforms requested") })
}

/// Just the Smith diagonal. This skips all transform bookkeeping, which is
/// the fast path for cokernel computations where only the invariant factors
/// matter.
pub fn snf_diagonal(a: &IntMatrix) -> Result<Vec<BigInt>, MatrixError> {
    let (s, _, _) = smith(a, false)?;
    Ok(s.diagonal())
}

/// Cokernel of the row span: the abelian group `Z^cols / rowspan(a)` in
/// canonical form. Invariant factors are the Smith diagonal entries greater
/// than one; the free rank is `cols` minus the number of nonzero entries.
pub fn cokernel(a: &IntMatrix) -> Result<AbelianGroup, MatrixError> {
    let diag = snf_diagonal(a)?;
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let factors: Vec<BigInt> = diag.into_iter().filter(|d| *d > BigInt::one()).collect();
    Ok(AbelianGroup::from_canonical_parts(a.cols() - nonzero, factors))
}

fn smith(
    a: &IntMatrix,
    track: bool,
) -> Result<(IntMatrix, Option<IntMatrix>, Option<IntMatrix>), MatrixError> {
    if a.is_empty() {
        return Err(MatrixError::Empty);
    }
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = track.then(|| IntMatrix::identity(m));
    let mut v = track.then(|| IntMatrix::identity(n));

    'positions: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&s, t) else {
                // The rest of the matrix is zero; trailing diagonal stays zero.
                break 'positions;
            };
            s.swap_rows(t, pi);
            if let Some(u) = u.as_mut() {
                u.swap_rows(t, pi);
            }
            s.swap_cols(t, pj);
            if let Some(v) = v.as_mut() {
                v.swap_cols(t, pj);
            }

            let mut leftover = false;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = rounded_quotient(s.get(i, t), s.get(t, t));
                s.sub_scaled_row(i, t, &q);
                if let Some(u) = u.as_mut() {
                    u.sub_scaled_row(i, t, &q);
                }
                leftover |= !s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = rounded_quotient(s.get(t, j), s.get(t, t));
                s.sub_scaled_col(j, t, &q);
                if let Some(v) = v.as_mut() {
                    v.sub_scaled_col(j, t, &q);
                }
                leftover |= !s.get(t, j).is_zero();
            }
            if leftover {
                // A remainder smaller than the pivot appeared; re-pivot on it.
                continue;
            }

            match non_multiple(&s, t) {
                Some(i) => {
                    // Fold the offending row into the pivot row so the next
                    // sweep produces a strictly smaller pivot.
                    s.add_row(t, i);
                    if let Some(u) = u.as_mut() {
                        u.add_row(t, i);
                    }
                }
                None => break,
            }
        }
    }

    for t in 0..m.min(n) {
        if s.get(t, t).is_negative() {
            s.negate_col(t);
            if let Some(v) = v.as_mut() {
                v.negate_col(t);
            }
        }
    }

    Ok((s, u, v))
}

/// Smallest-magnitude nonzero entry of the submatrix starting at `(t, t)`,
/// first in row-major order on ties.
fn smallest_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let e = s.get(i, j);
            if e.is_zero() {
                continue;
            }
            let mag = e.abs();
            match &best {
                Some((m, _, _)) if *m <= mag => {}
                _ => best = Some((mag, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// First row index `i > t` owning an entry not divisible by the pivot.
fn non_multiple(s: &IntMatrix, t: usize) -> Option<usize> {
    let pivot = s.get(t, t).clone();
    for i in t + 1..s.rows() {
        for j in t + 1..s.cols() {
            if !(s.get(i, j) % &pivot).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// Quotient rounding to nearest, so the remainder magnitude is at most half
/// the divisor.
fn rounded_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = num_integer::Integer::div_rem(a, b);
    if r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_i64(diag: &[i64], m: &IntMatrix) {
        let got = m.diagonal();
        let want: Vec<BigInt> = diag.iter().map(|&d| BigInt::from(d)).collect();
        assert_eq!(got, want, "diagonal mismatch:\n{m}");
    }

    fn check_transforms(a: &IntMatrix) {
        let r = snf(a).unwrap();
        let uav = r.u.mul(a).unwrap().mul(&r.v).unwrap();
        assert_eq!(uav, r.s, "u*a*v != s for\n{a}");
        assert_eq!(r.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(r.v.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntMatrix::identity(3);
        let r = snf(&id).unwrap();
        assert_eq!(r.s, id);
        assert_eq!(r.u, id);
        assert_eq!(r.v, id);
    }

    #[test]
    fn two_by_two_ladder_matrix() {
        // [[m, -m+1], [-m, m+a-1]] at m=2, a=2 reduces to diag(1, m*a).
        let a = IntMatrix::from_i64_rows(&[&[2, -1], &[-2, 3]]).unwrap();
        diag_i64(&[1, 4], &snf(&a).unwrap().s);
        check_transforms(&a);
    }

    #[test]
    fn symmetric_three_by_three() {
        let a = IntMatrix::from_i64_rows(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]).unwrap();
        diag_i64(&[1, 4, 4], &snf(&a).unwrap().s);
        check_transforms(&a);
    }

    #[test]
    fn zeros_trail_and_divisibility_holds() {
        let a = IntMatrix::from_i64_rows(&[&[2, 4, 6], &[4, 8, 12]]).unwrap();
        diag_i64(&[2, 0], &snf(&a).unwrap().s);
        let a = IntMatrix::from_i64_rows(&[&[4, 0], &[0, 6]]).unwrap();
        diag_i64(&[2, 12], &snf(&a).unwrap().s);
        check_transforms(&a);
    }

    #[test]
    fn rectangular_shapes() {
        let a = IntMatrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, 0]]).unwrap();
        diag_i64(&[0, 0], &snf(&a).unwrap().s);
        let a = IntMatrix::from_i64_rows(&[&[1, 1, 1]]).unwrap();
        diag_i64(&[1], &snf(&a).unwrap().s);
        check_transforms(&a);
    }

    #[test]
    fn empty_is_rejected() {
        assert!(matches!(snf(&IntMatrix::zeros(0, 3)), Err(MatrixError::Empty)));
        assert!(matches!(snf_diagonal(&IntMatrix::zeros(2, 0)), Err(MatrixError::Empty)));
    }
}
