//! Arithmetic in representation rings of finite cyclic and finite abelian
//! groups.
//!
//! `R(Z_d)` is the group ring `Z[ξ]/(ξ^d - 1)` with the fixed basis
//! `(1, ξ, ..., ξ^{d-1})`; exponents are reduced mod `d` at construction so
//! map matrices are unambiguous. Characters of a finite abelian group are
//! identified with elements of the (isomorphic) dual group and enumerated as
//! exponent tuples — only 1-dimensional characters are ever needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactalg::{columns_basis, kernel_basis, IntMatrix, PresentedModule};
use crate::{Error, Result};

/// gcd with the convention gcd(n, 0) = n, so that `d = gcd(n, k)` with
/// `k = 0` yields `d = n` (the trivial action case).
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// An element of `R(Z_d) = Z[ξ]/(ξ^d - 1)` as an exact coefficient vector;
/// index `i` holds the coefficient of `ξ^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    modulus: usize,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn new(modulus: usize, coeffs: Vec<BigInt>) -> Self {
        assert!(modulus >= 1, "modulus must be at least 1");
        assert_eq!(
            coeffs.len(),
            modulus,
            "coefficient count must equal the modulus"
        );
        Self { modulus, coeffs }
    }

    pub fn zero(modulus: usize) -> Self {
        Self::new(modulus, vec![BigInt::zero(); modulus])
    }

    /// The ring unit `1 = ξ^0`.
    pub fn one(modulus: usize) -> Self {
        Self::monomial(modulus, 0)
    }

    /// The monomial `ξ^a`, with `a` reduced mod `d`.
    pub fn monomial(modulus: usize, a: u64) -> Self {
        assert!(modulus >= 1, "modulus must be at least 1");
        let mut coeffs = vec![BigInt::zero(); modulus];
        coeffs[(a % modulus as u64) as usize] = BigInt::one();
        Self { modulus, coeffs }
    }

    /// `1 + ξ^a + ξ^{2a} + ... + ξ^{(terms-1)a}`.
    pub fn geometric_sum(modulus: usize, a: u64, terms: u64) -> Self {
        let mut coeffs = vec![BigInt::zero(); modulus];
        for t in 0..terms {
            coeffs[((a as u128 * t as u128) % modulus as u128) as usize] += 1;
        }
        Self { modulus, coeffs }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::new(self.modulus, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::new(self.modulus, coeffs))
    }

    /// Ring product: cyclic convolution, the coefficient of `ξ^t` being the
    /// sum of `x_i * y_j` over `i + j = t mod d`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let d = self.modulus;
        let mut coeffs = vec![BigInt::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[(i + j) % d] += a * b;
                }
            }
        }
        Ok(Self::new(d, coeffs))
    }

    /// Multiplication by `self` as a Z-linear map on the monomial basis.
    pub fn mul_matrix(&self) -> IntMatrix {
        let d = self.modulus;
        IntMatrix::from_fn(d, d, |r, c| self.coeffs[(d + r - c) % d].clone())
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }
}

/// The matrix of multiplication by `ξ^a` on `R(Z_d)`: the permutation
/// sending basis index `i` to `(i + a) mod d`.
pub fn char_action_matrix(d: u64, a: u64) -> IntMatrix {
    assert!(d >= 1, "modulus must be at least 1");
    let d = d as usize;
    let a = (a % d as u64) as usize;
    IntMatrix::from_fn(d, d, |r, c| {
        if r == (c + a) % d {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// The fixed submodule `R(Z_d)^{ξ^a}` with its embedded basis.
#[derive(Clone, Debug)]
pub struct InvariantSubmodule {
    /// Orbit-sum basis vectors as columns, ordered by least orbit
    /// representative; saturated in `R(Z_d)`.
    pub basis: IntMatrix,
    /// Free module of rank gcd(d, a), the number of orbits of `+a` on `Z/d`.
    pub module: PresentedModule,
}

/// The submodule of `R(Z_d)` fixed by multiplication by `ξ^a`, i.e.
/// `ker(P_a - I)`, spanned by the orbit sums of `+a` acting on exponents.
pub fn invariant_submodule(d: u64, a: u64) -> InvariantSubmodule {
    assert!(d >= 1, "modulus must be at least 1");
    let du = d as usize;
    let a = a % d;
    let mut seen = vec![false; du];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..du {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = (i + a as usize) % du;
        }
        orbits.push(orbit);
    }
    let basis = IntMatrix::from_fn(du, orbits.len(), |r, c| {
        if orbits[c].contains(&r) {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    debug_assert_eq!(orbits.len() as u64, gcd(d, a));
    let module = PresentedModule::free(orbits.len());
    InvariantSubmodule { basis, module }
}

/// `R(Z_d) / <1 - ξ^a>` presented as the cokernel of `I - P_a`; free of
/// rank gcd(d, a) by the orbit decomposition of the exponents.
pub fn quotient_by_one_minus(d: u64, a: u64) -> PresentedModule {
    let p = char_action_matrix(d, a);
    let i = IntMatrix::identity(d as usize);
    PresentedModule::cokernel(&(&i - &p))
}

/// The ring map `R(Z_d) -> R(Z_{d_sub})` induced by the subgroup inclusion
/// `Z_{d_sub} ⊆ Z_d`, sending `ξ^i` to `η^{i mod d_sub}`.
pub fn restriction_ring_map(d: u64, d_sub: u64) -> Result<IntMatrix> {
    if d_sub == 0 || d == 0 || !d.is_multiple_of(d_sub) {
        return Err(Error::NotASubgroup { n: d, m: d_sub });
    }
    Ok(IntMatrix::from_fn(d_sub as usize, d as usize, |r, c| {
        if r == c % d_sub as usize {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }))
}

/// A finite abelian group as a product of cyclic factors. The dual group has
/// the same factor list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    cyclic_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(cyclic_factors: Vec<u64>) -> Self {
        assert!(
            cyclic_factors.iter().all(|&f| f >= 1),
            "factors must be positive"
        );
        Self { cyclic_factors }
    }

    pub fn trivial() -> Self {
        Self {
            cyclic_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.cyclic_factors
    }

    pub fn order(&self) -> u64 {
        self.cyclic_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// All elements as exponent tuples, in lexicographic order. This is also
    /// the enumeration of the irreducible characters via the dual group.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &f in &self.cyclic_factors {
            let mut next = Vec::with_capacity(out.len() * f as usize);
            for prefix in &out {
                for v in 0..f {
                    let mut e = prefix.clone();
                    e.push(v);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }
}

/// A (1-dimensional) character of a finite abelian group, written as one
/// exponent per cyclic factor. Multiplication of characters is addition of
/// exponent tuples; the trivial character has all exponents zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    group: FiniteAbelianGroup,
    exponents: Vec<u64>,
}

impl Character {
    pub fn new(group: FiniteAbelianGroup, exponents: Vec<u64>) -> Self {
        assert_eq!(
            exponents.len(),
            group.factors().len(),
            "one exponent per factor"
        );
        let exponents = exponents
            .iter()
            .zip(group.factors())
            .map(|(&e, &f)| e % f)
            .collect();
        Self { group, exponents }
    }

    pub fn trivial(group: FiniteAbelianGroup) -> Self {
        let exponents = vec![0; group.factors().len()];
        Self { group, exponents }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Multiplicative order: the lcm of the orders of the per-factor
    /// exponents.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.group.factors())
            .map(|(&e, &f)| f / gcd(f, e))
            .fold(1, |acc, o| acc.lcm(&o))
    }
}

/// The kernel of the homomorphism `G -> Z_n` given by one exponent per
/// cyclic factor, returned in cyclic-factor (invariant factor) form.
///
/// The exponents define a homomorphism exactly when `phi_i * m_i = 0 mod n`
/// for every factor order `m_i`; otherwise `IllFormedHom` is returned.
pub fn kernel_of_hom(g: &FiniteAbelianGroup, phi: &[u64], n: u64) -> Result<FiniteAbelianGroup> {
    assert!(n >= 1, "target group order must be at least 1");
    assert_eq!(phi.len(), g.factors().len(), "one exponent per factor");
    for (index, (&c, &m)) in phi.iter().zip(g.factors()).enumerate() {
        if !(c as u128 * m as u128).is_multiple_of(n as u128) {
            return Err(Error::IllFormedHom { n, index });
        }
    }
    let r = g.factors().len();

    // Preimage lattice P = {x in Z^r : sum phi_i x_i = 0 mod n}, via the
    // kernel of the 1 x (r+1) matrix [phi | n].
    let mut row: Vec<BigInt> = phi.iter().map(|&c| BigInt::from(c)).collect();
    row.push(BigInt::from(n));
    let hom = IntMatrix::new(1, r + 1, row);
    let p = columns_basis(&kernel_basis(&hom).row_slice(0, r));

    // The kernel is P / diag(m) Z^r; present it on the basis of P and read
    // off the invariant factors.
    let m_diag = IntMatrix::diagonal(
        &g.factors()
            .iter()
            .map(|&m| BigInt::from(m))
            .collect::<Vec<_>>(),
    );
    let stacked = p.hstack(&-&m_diag);
    let rel = columns_basis(&kernel_basis(&stacked).row_slice(0, p.cols()));
    let module = PresentedModule::from_relations(p.cols(), rel);

    let factors: Vec<u64> = module
        .invariant_factors()
        .iter()
        .map(|f| {
            assert!(
                !f.is_zero(),
                "kernel of a homomorphism of finite groups is finite"
            );
            u64::try_from(f).expect("factor fits in u64")
        })
        .collect();
    Ok(FiniteAbelianGroup::new(factors))
}
