use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `u * a * v = d` of an integer matrix.
///
/// `u` and `v` are unimodular, `d` is diagonal with nonnegative entries and
/// each diagonal entry divides the next. The decomposition is deterministic:
/// pivots are chosen by smallest nonzero absolute value, ties broken by
/// lowest `(row, col)` index.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

/// Smith normal form together with the inverses of the transformations,
/// tracked during elimination. `u_inv * d * v_inv = a`.
#[derive(Clone, Debug)]
pub struct SmithFull {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithFull {
    /// Number of nonzero diagonal entries, which is the rank of the matrix.
    pub fn rank(&self) -> usize {
        self.d
            .diagonal_entries()
            .iter()
            .filter(|e| !e.is_zero())
            .count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let full = smith_full(a);
    SmithDecomposition {
        u: full.u,
        d: full.d,
        v: full.v,
    }
}

pub fn smith_full(a: &IntMatrix) -> SmithFull {
    Worker::new(a.clone()).run()
}

struct Worker {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Worker {
    fn new(d: IntMatrix) -> Self {
        let (m, n) = (d.rows(), d.cols());
        Self {
            d,
            u: IntMatrix::identity(m),
            u_inv: IntMatrix::identity(m),
            v: IntMatrix::identity(n),
            v_inv: IntMatrix::identity(n),
        }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        self.d.swap_rows(r1, r2);
        self.u.swap_rows(r1, r2);
        self.u_inv.swap_cols(r1, r2);
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        self.d.swap_cols(c1, c2);
        self.v.swap_cols(c1, c2);
        self.v_inv.swap_rows(c1, c2);
    }

    /// `row[dst] += q * row[src]` as a left unimodular operation.
    fn row_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.row_addmul(dst, src, q);
        self.u.row_addmul(dst, src, q);
        // (E^-1 has -q; right-multiplying u_inv by E^-1 is a column op.)
        self.u_inv.col_addmul(src, dst, &-q);
    }

    /// `col[dst] += q * col[src]` as a right unimodular operation.
    fn col_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.col_addmul(dst, src, q);
        self.v.col_addmul(dst, src, q);
        self.v_inv.row_addmul(src, dst, &-q);
    }

    fn negate_row(&mut self, r: usize) {
        self.d.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    /// Smallest nonzero |entry| in the trailing submatrix starting at `t`,
    /// ties broken by lowest (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.d.rows() {
            for c in t..self.d.cols() {
                let e = self.d.entry(r, c);
                if e.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((r, c)),
                    Some((br, bc)) => {
                        if e.abs() < self.d.entry(br, bc).abs() {
                            best = Some((r, c));
                        }
                    }
                }
            }
        }
        best
    }

    fn run(mut self) -> SmithFull {
        let steps = self.d.rows().min(self.d.cols());
        for t in 0..steps {
            'place: loop {
                let Some((pr, pc)) = self.find_pivot(t) else {
                    break 'place; // trailing submatrix is zero
                };
                self.swap_rows(t, pr);
                self.swap_cols(t, pc);

                // Reduce the pivot column; leftover remainders are strictly
                // smaller than the pivot, so re-run pivot selection.
                let mut dirty = false;
                for r in t + 1..self.d.rows() {
                    if self.d.entry(r, t).is_zero() {
                        continue;
                    }
                    let q = -(self.d.entry(r, t) / self.d.entry(t, t));
                    self.row_addmul(r, t, &q);
                    if !self.d.entry(r, t).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue 'place;
                }
                for c in t + 1..self.d.cols() {
                    if self.d.entry(t, c).is_zero() {
                        continue;
                    }
                    let q = -(self.d.entry(t, c) / self.d.entry(t, t));
                    self.col_addmul(c, t, &q);
                    if !self.d.entry(t, c).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue 'place;
                }

                // Divisibility fix-up: the pivot must divide every entry of
                // the trailing submatrix for the chain d_i | d_{i+1} to hold.
                let mut offender = None;
                'scan: for r in t + 1..self.d.rows() {
                    for c in t + 1..self.d.cols() {
                        if !(self.d.entry(r, c) % self.d.entry(t, t)).is_zero() {
                            offender = Some(r);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(r) => {
                        let one = BigInt::from(1);
                        self.row_addmul(t, r, &one);
                        continue 'place;
                    }
                    None => break 'place,
                }
            }
        }
        for i in 0..steps {
            if self.d.entry(i, i).is_negative() {
                self.negate_row(i);
            }
        }
        SmithFull {
            u: self.u,
            d: self.d,
            v: self.v,
            u_inv: self.u_inv,
            v_inv: self.v_inv,
        }
    }
}

/// A basis of the integer kernel lattice `{x : a*x = 0}`, one column per
/// basis vector.
///
/// The basis columns are columns of the unimodular `v`, so the kernel they
/// span is saturated: it is a direct summand of the ambient column space and
/// coordinates of kernel elements relative to the basis are integral.
/// Columns are sign-normalized so the first nonzero entry is positive.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let full = smith_full(a);
    let rank = full.rank();
    let picked: Vec<usize> = (rank..a.cols()).collect();
    let mut basis = full.v.select_columns(&picked);
    for c in 0..basis.cols() {
        basis.normalize_column_sign(c);
    }
    basis
}

/// A basis for the lattice spanned by the columns of `a`.
///
/// From `u * a * v = d`, the column span equals `u_inv * col(d)`, and the
/// nonzero columns of `d` give the basis `d_i * u_inv[:, i]`.
pub fn columns_basis(a: &IntMatrix) -> IntMatrix {
    let full = smith_full(a);
    let rank = full.rank();
    IntMatrix::from_fn(a.rows(), rank, |r, i| {
        full.u_inv.entry(r, i) * full.d.entry(i, i)
    })
}

/// Solves `a * x = b` over the integers for every column of `b` at once.
///
/// Returns `None` when some column of `b` is not in the integer column span
/// of `a`. Free coordinates are set to zero, so the solution is deterministic.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve requires matching row counts");
    let full = smith_full(a);
    let rank = full.rank();
    let ub = &full.u * b;
    let mut y = IntMatrix::zero(a.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..a.rows() {
            let rhs = ub.entry(i, j);
            if i < rank {
                let di = full.d.entry(i, i);
                let (q, r) = num_integer::Integer::div_rem(rhs, di);
                if !r.is_zero() {
                    return None;
                }
                y.set(i, j, q);
            } else if !rhs.is_zero() {
                return None;
            }
        }
    }
    Some(&full.v * &y)
}
