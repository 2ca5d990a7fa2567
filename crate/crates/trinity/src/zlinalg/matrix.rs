use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Errors from matrix construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// Entry buffer length does not match `rows * cols`.
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    /// Operation needs at least one row and one column.
    Empty,
    /// Operation needs a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Inner dimensions disagree for a product.
    IncompatibleProduct { left_cols: usize, right_rows: usize },
    /// Row or column index out of range.
    IndexOutOfRange { index: usize, bound: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::ShapeMismatch { rows, cols, len } => {
                write!(f, "{rows}x{cols} matrix needs {} entries, got {len}", rows * cols)
            }
            MatrixError::Empty => write!(f, "matrix must have at least one row and one column"),
            MatrixError::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            MatrixError::IncompatibleProduct { left_cols, right_rows } => {
                write!(f, "cannot multiply: left has {left_cols} columns, right has {right_rows} rows")
            }
            MatrixError::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range for dimension {bound}")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

/// Dense row-major matrix over arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from a row-major entry buffer.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch { rows, cols, len: entries.len() });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// All-zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Convenience constructor from machine-word rows; mainly for tests and
    /// fixture literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(MatrixError::ShapeMismatch { rows: nrows, cols: ncols, len: row.len() });
            }
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(nrows, ncols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True when either dimension is zero.
    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    /// Main-diagonal entries, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::IncompatibleProduct {
                left_cols: self.cols,
                right_rows: rhs.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Copy with row `i` and column `j` removed.
    pub fn delete_row_col(&self, i: usize, j: usize) -> Result<IntMatrix, MatrixError> {
        if i >= self.rows {
            return Err(MatrixError::IndexOutOfRange { index: i, bound: self.rows });
        }
        if j >= self.cols {
            return Err(MatrixError::IndexOutOfRange { index: j, bound: self.cols });
        }
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == i {
                continue;
            }
            for c in 0..self.cols {
                if c != j {
                    entries.push(self.get(r, c).clone());
                }
            }
        }
        IntMatrix::new(self.rows - 1, self.cols - 1, entries)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// The determinant of the empty 0x0 matrix is 1 by convention.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                // Pivot by the first row below with a nonzero entry in column k.
                let swap = (k + 1..n).find(|&i| !m.get(i, k).is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    m.set(i, j, num / &prev);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    pub(crate) fn sub_scaled_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * self.get(src, j);
            let val = self.get(dst, j) - delta;
            self.set(dst, j, val);
        }
    }

    /// `col[dst] -= q * col[src]`
    pub(crate) fn sub_scaled_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * self.get(i, src);
            let val = self.get(i, dst) - delta;
            self.set(i, dst, val);
        }
    }

    /// `row[dst] += row[src]`
    pub(crate) fn add_row(&mut self, dst: usize, src: usize) {
        for j in 0..self.cols {
            let val = self.get(dst, j) + self.get(src, j);
            self.set(dst, j, val);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let val = -self.get(i, j);
            self.set(i, j, val);
        }
    }

    /// Largest entry magnitude; zero for empty matrices.
    pub fn max_abs(&self) -> BigInt {
        self.entries.iter().map(|e| e.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_small_matrices() {
        let m = IntMatrix::from_i64_rows(&[&[2, -1], &[-2, 3]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(4));

        let m = IntMatrix::from_i64_rows(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(16));

        let singular = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(singular.determinant().unwrap(), BigInt::zero());
    }

    #[test]
    fn determinant_needs_square() {
        let m = IntMatrix::zeros(2, 3);
        assert!(matches!(m.determinant(), Err(MatrixError::NotSquare { .. })));
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let id = IntMatrix::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn delete_row_col_shrinks() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).unwrap();
        let b = a.delete_row_col(1, 1).unwrap();
        assert_eq!(b, IntMatrix::from_i64_rows(&[&[1, 3], &[7, 9]]).unwrap());
    }
}
