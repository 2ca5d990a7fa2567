//! Pinned matrix reductions used to shrink chain Laplacians.
//!
//! The chain constructions owe their groups to two local cancellations: a
//! pair of rerouted hub vertices can be absorbed into a single diagonal
//! entry `a·p`, and a path of single arcs can be contracted to one row
//! `[d, 1−d]`.  Each [`ReductionFixture`] value describes a parametrised
//! matrix exhibiting one cancellation; [`build_reduction_fixture`] produces
//! the matrix `before` the cancellation together with the claimed result
//! `after`.  The two must have equal Smith normal forms — that equality is
//! what the sweep in the acceptance suite checks.
//!
//! The `tail` block stands for "whatever the rest of the matrix looks like":
//! the cancellation is local, so the reduction must hold for an arbitrary
//! tail that overlaps the affected columns.

use super::FamilyError;
use crate::zlinalg::IntMatrix;
use num_bigint::BigInt;

/// A parametrised reduction claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionFixture {
    /// Two hub vertices of degree `p`, one reached through `x` and the other
    /// through `y` rerouted neighbours, collapse to a diagonal `a·p` next to
    /// `p`-scaled identity rows.  The tail (at least two rows, any number of
    /// columns) rides along on the last structural column.
    PairedHubs { p: u64, a: u64, x: usize, y: usize, tail: IntMatrix },
    /// A path of `d` unit steps contracts to the single row `[d, 1−d]`.
    /// The tail (at least one row, at least two columns) overlaps the last
    /// two path columns.
    PathContraction { d: usize, tail: IntMatrix },
}

/// The matrices before and after one pinned reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedReduction {
    pub before: IntMatrix,
    pub after: IntMatrix,
}

fn set_i64(m: &mut IntMatrix, i: usize, j: usize, v: i64) {
    m.set(i, j, BigInt::from(v));
}

fn paired_hubs(
    p: u64,
    a: u64,
    x: usize,
    y: usize,
    tail: &IntMatrix,
) -> Result<PinnedReduction, FamilyError> {
    if p < 2 || a < 2 {
        return Err(FamilyError::InvalidParameter {
            name: "(p, a)",
            value: format!("({p}, {a})"),
            requirement: "both the prime and the multiplier must be at least 2",
        });
    }
    if tail.rows() < 2 {
        return Err(FamilyError::InvalidParameter {
            name: "tail",
            value: format!("{} rows", tail.rows()),
            requirement: "the tail must have at least two rows",
        });
    }
    let m = tail.rows();
    let l = tail.cols();
    let p_i = p as i64;
    let a_i = a as i64;
    let x_i = x as i64;
    let y_i = y as i64;
    let rows = x + y + m + 2;
    let cols = x + y + l + 3;
    // Column layout: 0, 1, the x block, the y block, the pivot column z,
    // then the tail columns.
    let xcol = |i: usize| 2 + i;
    let ycol = |j: usize| 2 + x + j;
    let zcol = 2 + x + y;
    let tcol = |t: usize| 3 + x + y + t;

    let mut before = IntMatrix::zeros(rows, cols);
    set_i64(&mut before, 0, 0, p_i);
    set_i64(&mut before, 0, 1, 1 - p_i);
    set_i64(&mut before, 0, zcol, -1);
    set_i64(&mut before, 1, 0, -p_i);
    set_i64(&mut before, 1, 1, p_i * (x_i + 1) + a_i - x_i - 1);
    for i in 0..x {
        set_i64(&mut before, 1, xcol(i), -p_i);
    }
    set_i64(&mut before, 1, zcol, x_i + 1 - a_i);
    for i in 0..x {
        set_i64(&mut before, 2 + i, 1, 1 - p_i);
        set_i64(&mut before, 2 + i, xcol(i), p_i);
        set_i64(&mut before, 2 + i, zcol, -1);
    }
    for j in 0..y {
        set_i64(&mut before, 2 + x + j, 1, -1);
        set_i64(&mut before, 2 + x + j, ycol(j), p_i);
        set_i64(&mut before, 2 + x + j, zcol, 1 - p_i);
    }
    let row_a = 2 + x + y;
    set_i64(&mut before, row_a, 1, y_i + 1 - a_i);
    for j in 0..y {
        set_i64(&mut before, row_a, ycol(j), -p_i);
    }
    set_i64(&mut before, row_a, zcol, p_i * (y_i + 1) + a_i - y_i - 1);
    let row_b = row_a + 1;
    set_i64(&mut before, row_b, 1, -1);
    set_i64(&mut before, row_b, zcol, 1 - p_i);
    for t in 0..l {
        before.set(row_a, tcol(t), tail.get(0, t).clone());
        before.set(row_b, tcol(t), tail.get(1, t).clone());
    }
    for i in 2..m {
        for t in 0..l {
            before.set(row_b + i - 1, tcol(t), tail.get(i, t).clone());
        }
    }

    let mut after = IntMatrix::zeros(rows, cols);
    set_i64(&mut after, 0, 0, 1);
    set_i64(&mut after, 1, 1, a_i * p_i);
    for i in 0..x {
        set_i64(&mut after, 2 + i, xcol(i), p_i);
    }
    for j in 0..y {
        set_i64(&mut after, 2 + x + j, ycol(j), p_i);
    }
    set_i64(&mut after, row_a, zcol, p_i);
    set_i64(&mut after, row_b, zcol, -p_i);
    for t in 0..l {
        after.set(row_a, tcol(t), tail.get(0, t).clone());
        after.set(row_b, tcol(t), tail.get(1, t).clone());
    }
    for i in 2..m {
        for t in 0..l {
            after.set(row_b + i - 1, tcol(t), tail.get(i, t).clone());
        }
    }
    Ok(PinnedReduction { before, after })
}

fn path_contraction(d: usize, tail: &IntMatrix) -> Result<PinnedReduction, FamilyError> {
    if d < 2 {
        return Err(FamilyError::InvalidParameter {
            name: "d",
            value: d.to_string(),
            requirement: "the path must have at least two steps",
        });
    }
    if tail.rows() < 1 || tail.cols() < 2 {
        return Err(FamilyError::InvalidParameter {
            name: "tail",
            value: format!("{} by {}", tail.rows(), tail.cols()),
            requirement: "the tail must have at least one row and two columns",
        });
    }
    let x = tail.rows();
    let y = tail.cols();
    let rows = d - 1 + x;
    let cols = d - 2 + y;

    let mut before = IntMatrix::zeros(rows, cols);
    for i in 0..d - 1 {
        if i > 0 {
            set_i64(&mut before, i, i - 1, -1);
        }
        set_i64(&mut before, i, i, 2);
        set_i64(&mut before, i, i + 1, -1);
    }
    for r in 0..x {
        for t in 0..y {
            before.set(d - 1 + r, d - 2 + t, tail.get(r, t).clone());
        }
    }

    let mut after = IntMatrix::zeros(rows, cols);
    for i in 0..d - 2 {
        set_i64(&mut after, i, i, 1);
    }
    set_i64(&mut after, d - 2, d - 2, d as i64);
    set_i64(&mut after, d - 2, d - 1, 1 - d as i64);
    for r in 0..x {
        for t in 0..y {
            after.set(d - 1 + r, d - 2 + t, tail.get(r, t).clone());
        }
    }
    Ok(PinnedReduction { before, after })
}

/// Produces the `before`/`after` pair for one reduction claim.
pub fn build_reduction_fixture(kind: &ReductionFixture) -> Result<PinnedReduction, FamilyError> {
    match kind {
        ReductionFixture::PairedHubs { p, a, x, y, tail } => paired_hubs(*p, *a, *x, *y, tail),
        ReductionFixture::PathContraction { d, tail } => path_contraction(*d, tail),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::snf_diagonal;

    fn tail(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn smallest_paired_hubs_has_the_pinned_smith_form() {
        let fixture = ReductionFixture::PairedHubs {
            p: 2,
            a: 2,
            x: 0,
            y: 0,
            tail: IntMatrix::zeros(2, 0),
        };
        let reduction = build_reduction_fixture(&fixture).unwrap();
        let expected = IntMatrix::from_i64_rows(&[
            &[2, -1, -1],
            &[-2, 3, -1],
            &[0, -1, 3],
            &[0, -1, -1],
        ])
        .unwrap();
        assert_eq!(reduction.before, expected);
        let factors: Vec<BigInt> = [1, 2, 4].map(BigInt::from).to_vec();
        assert_eq!(snf_diagonal(&reduction.before).unwrap(), factors);
        assert_eq!(snf_diagonal(&reduction.after).unwrap(), factors);
    }

    #[test]
    fn both_sides_share_a_smith_form_on_small_cases() {
        let tails = [tail(&[&[1, 0], &[0, 1]]), tail(&[&[3, -2], &[-1, 5], &[2, 2]])];
        for p in [2u64, 3] {
            for a in [2u64, 4] {
                for x in 0..=2usize {
                    for y in 0..=2usize {
                        for t in &tails {
                            let fixture = ReductionFixture::PairedHubs {
                                p,
                                a,
                                x,
                                y,
                                tail: t.clone(),
                            };
                            let r = build_reduction_fixture(&fixture).unwrap();
                            assert_eq!(
                                snf_diagonal(&r.before).unwrap(),
                                snf_diagonal(&r.after).unwrap(),
                                "paired hubs p={p} a={a} x={x} y={y}"
                            );
                        }
                    }
                }
            }
        }
        for d in 2..=5usize {
            for t in &tails {
                let fixture = ReductionFixture::PathContraction { d, tail: t.clone() };
                let r = build_reduction_fixture(&fixture).unwrap();
                assert_eq!(
                    snf_diagonal(&r.before).unwrap(),
                    snf_diagonal(&r.after).unwrap(),
                    "path contraction d={d}"
                );
            }
        }
    }

    #[test]
    fn two_step_path_contraction_is_already_contracted() {
        let t = tail(&[&[7, -3, 2]]);
        let r = build_reduction_fixture(&ReductionFixture::PathContraction { d: 2, tail: t })
            .unwrap();
        assert_eq!(r.before, r.after);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        let ok_tail = tail(&[&[1, 0], &[0, 1]]);
        assert!(build_reduction_fixture(&ReductionFixture::PairedHubs {
            p: 1,
            a: 2,
            x: 0,
            y: 0,
            tail: ok_tail.clone(),
        })
        .is_err());
        assert!(build_reduction_fixture(&ReductionFixture::PairedHubs {
            p: 2,
            a: 2,
            x: 0,
            y: 0,
            tail: tail(&[&[1, 0]]),
        })
        .is_err());
        assert!(build_reduction_fixture(&ReductionFixture::PathContraction {
            d: 1,
            tail: ok_tail.clone(),
        })
        .is_err());
        assert!(build_reduction_fixture(&ReductionFixture::PathContraction {
            d: 3,
            tail: tail(&[&[1]]),
        })
        .is_err());
    }
}
