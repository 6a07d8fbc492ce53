//! Shared test helpers: an independent fraction-based rank oracle and
//! deterministic random matrix generators.

// Shared between test targets; not every target uses every helper.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tekt::exactalg::IntMatrix;

/// Rank by Gaussian elimination over the rationals. Kept independent of the
/// Smith normal form code path on purpose: it is the oracle that path is
/// checked against.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| BigRational::from_integer(m.entry(r, c).clone()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let pivot = a[rank][col].clone();
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = &a[r][col] / &pivot;
                let pivot_row_values = a[rank].clone();
                for (c, pv) in pivot_row_values.iter().enumerate().skip(col) {
                    let sub = &factor * pv;
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, max_abs: i64) -> IntMatrix {
    let rows = rng.gen_range(0..=max_dim);
    let cols = rng.gen_range(0..=max_dim);
    IntMatrix::from_fn(rows, cols, |_, _| {
        BigInt::from(rng.gen_range(-max_abs..=max_abs))
    })
}

/// A random unimodular matrix: a word in elementary row/column operations
/// applied to the identity.
pub fn random_unimodular(rng: &mut ChaCha8Rng, size: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(size);
    if size < 2 {
        return m;
    }
    let ops = rng.gen_range(4..12);
    for _ in 0..ops {
        let src = rng.gen_range(0..size);
        let mut dst = rng.gen_range(0..size);
        while dst == src {
            dst = rng.gen_range(0..size);
        }
        let q = BigInt::from(rng.gen_range(-3..=3i64));
        let elementary = {
            let mut e = IntMatrix::identity(size);
            e.set(dst, src, q);
            e
        };
        m = &m * &elementary;
    }
    m
}

/// A uniformly shuffled index vector `0..n` (Fisher-Yates).
pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}
