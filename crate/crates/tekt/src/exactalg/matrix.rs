use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A dense row-major integer matrix with arbitrary-precision entries.
///
/// Empty shapes (zero rows or zero columns) are legal everywhere; degenerate
/// matrices arise naturally as presentations of trivial and free modules.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| BigInt::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn diagonal(diag: &[BigInt]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Convenience constructor from machine-integer rows, mostly for tests
    /// and for the small structured matrices the theory produces directly.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.entry(r, c).clone()).collect()
    }

    /// The matrix formed by a contiguous range of rows.
    pub fn row_slice(&self, start: usize, end: usize) -> IntMatrix {
        assert!(start <= end && end <= self.rows);
        IntMatrix::from_fn(end - start, self.cols, |r, c| {
            self.entry(start + r, c).clone()
        })
    }

    /// The matrix formed by the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(self.rows, cols.len(), |r, j| self.entry(r, cols[j]).clone())
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |r, c| self.entry(c, r).clone())
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "hstack requires equal row counts");
        IntMatrix::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.entry(r, c).clone()
            } else {
                rhs.entry(r, c - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation, `self` on top.
    pub fn vstack(&self, below: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, below.cols, "vstack requires equal column counts");
        IntMatrix::from_fn(self.rows + below.rows, self.cols, |r, c| {
            if r < self.rows {
                self.entry(r, c).clone()
            } else {
                below.entry(r - self.rows, c).clone()
            }
        })
    }

    pub fn scale(&self, factor: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |r, c| self.entry(r, c) * factor)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must match columns");
        (0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (c, vc) in v.iter().enumerate() {
                    let e = self.entry(r, c);
                    if !e.is_zero() && !vc.is_zero() {
                        acc += e * vc;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.entry(r, c).is_one()
                    } else {
                        self.entry(r, c).is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.entry(r, c).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.entry(i, i).clone())
            .collect()
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    ///
    /// Independent of the Smith normal form path, which makes it usable as a
    /// cross-check for unimodularity of transformation matrices.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant requires a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.entry(k, k).is_zero() {
                let swap = (k + 1..n).find(|&r| !a.entry(r, k).is_zero());
                match swap {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.entry(k, k) * a.entry(i, j) - a.entry(i, k) * a.entry(k, j);
                    let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a.set(i, j, q);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.entry(k, k).clone();
        }
        sign * a.entry(n - 1, n - 1).clone()
    }

    // In-place elementary operations; used by the normal form workers, which
    // own their copies. Public values stay immutable.

    pub(crate) fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + c1, r * self.cols + c2);
        }
    }

    /// `row[dst] += q * row[src]`.
    pub(crate) fn row_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.entry(src, c);
            if !v.is_zero() {
                let add = v * q;
                let e = &mut self.entries[dst * self.cols + c];
                *e += add;
            }
        }
    }

    /// `col[dst] += q * col[src]`.
    pub(crate) fn col_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.entry(r, src);
            if !v.is_zero() {
                let add = v * q;
                let e = &mut self.entries[r * self.cols + dst];
                *e += add;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let e = &mut self.entries[r * self.cols + c];
            if !e.is_zero() {
                *e = -std::mem::take(e);
            }
        }
    }

    pub(crate) fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let e = &mut self.entries[r * self.cols + c];
            if !e.is_zero() {
                *e = -std::mem::take(e);
            }
        }
    }

    /// Negates a column so that its first nonzero entry is positive.
    pub(crate) fn normalize_column_sign(&mut self, c: usize) {
        for r in 0..self.rows {
            let e = self.entry(r, c);
            if e.is_negative() {
                self.negate_col(c);
                return;
            }
            if e.is_positive() {
                return;
            }
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.entry(r, c).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.entry(k, c);
                    if !b.is_zero() {
                        let add = a * b;
                        let e = &mut out.entries[r * out.cols + c];
                        *e += add;
                    }
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        IntMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.entry(r, c) + rhs.entry(r, c)
        })
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        IntMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.entry(r, c) - rhs.entry(r, c)
        })
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |r, c| -self.entry(r, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = IntMatrix::from_rows_i64(&[vec![1, 2], vec![3, 4]]);
        let i = IntMatrix::identity(2);
        assert_eq!(&a * &i, a);
        assert_eq!(&i * &a, a);
    }

    #[test]
    fn empty_shapes_are_legal() {
        let a = IntMatrix::zero(2, 0);
        let b = IntMatrix::zero(0, 3);
        let p = &a * &b;
        assert_eq!((p.rows(), p.cols()), (2, 3));
        assert!(p.is_zero());
        assert!(IntMatrix::identity(0).is_identity());
    }

    #[test]
    fn determinant() {
        let a = IntMatrix::from_rows_i64(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(a.det(), BigInt::from(1));
        let b = IntMatrix::from_rows_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(b.det(), BigInt::zero());
        let swap = IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.det(), BigInt::from(-1));
        assert_eq!(IntMatrix::identity(0).det(), BigInt::one());
    }

    #[test]
    fn stacking() {
        let a = IntMatrix::from_rows_i64(&[vec![1], vec![2]]);
        let b = IntMatrix::from_rows_i64(&[vec![3], vec![4]]);
        let h = a.hstack(&b);
        assert_eq!(h, IntMatrix::from_rows_i64(&[vec![1, 3], vec![2, 4]]));
        let v = a.vstack(&b);
        assert_eq!(v.rows(), 4);
        assert_eq!(v.column(0), vec![1.into(), 2.into(), 3.into(), 4.into()]);
    }
}
