//! Twisted equivariant K-groups of equivariant circle bundles over a point.
//!
//! For the cyclic group `Z_n`, the bundle `E_k` is the circle with the
//! `k`-th power rotation action and a twist is a class `ell` with
//! `k*ell = 0 mod n`. The K-groups are computed two independent ways:
//!
//! * as kernel and cokernel of an explicit `2d x 2d` Mayer–Vietoris matrix
//!   over `R(Z_d)`, `d = gcd(n, k)`, and
//! * in closed form, as the fixed submodule `R(Z_d)^{ξ^e}` and the quotient
//!   `R(Z_d)/<1 - ξ^e>` for the twist exponent `e = d*ell/n`.
//!
//! Agreement of the two routes over exhaustive sweeps is one of the main
//! verification targets of the crate. The same machinery generalizes to a
//! finite abelian group acting through a homomorphism to a cyclic group.

use serde::{Deserialize, Serialize};

use crate::exactalg::{kernel_basis, IntMatrix, PresentedModule};
use crate::repring::{
    char_action_matrix, gcd, invariant_submodule, kernel_of_hom, Character, FiniteAbelianGroup,
};
use crate::{Error, Result};

/// A `Z_n`-equivariant pair over a point: the bundle `E_k` together with the
/// twist class `ell`, valid when `k*ell = 0 mod n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PointPair {
    n: u64,
    k: u64,
    ell: u64,
}

impl PointPair {
    pub fn new(n: u64, k: u64, ell: u64) -> Result<Self> {
        if n < 1 || k >= n || ell >= n || !(k as u128 * ell as u128).is_multiple_of(n as u128) {
            return Err(Error::InvalidPair { n, k, ell });
        }
        Ok(Self { n, k, ell })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// `d = gcd(n, k)`, with `gcd(n, 0) = n`. The restricted K-groups live
    /// over `R(Z_d)`.
    pub fn d(&self) -> u64 {
        gcd(self.n, self.k)
    }

    /// The twist exponent `e = d*ell/n`. Integrality is equivalent to the
    /// validity constraint `k*ell = 0 mod n`, but is asserted loudly rather
    /// than rounded.
    pub fn twist_exponent(&self) -> u64 {
        let d = self.d();
        let num = d as u128 * self.ell as u128;
        assert!(
            num.is_multiple_of(self.n as u128),
            "twist exponent d*ell/n must be an integer for a valid pair"
        );
        (num / self.n as u128) as u64
    }
}

/// All twist classes on `E_k`: the `ell` with `k*ell = 0 mod n`, ascending.
/// These are exactly the multiples of `n/gcd(n, k)`.
pub fn classify_twists(n: u64, k: u64) -> Vec<u64> {
    assert!(n >= 1 && k < n, "need n >= 1 and k < n");
    (0..n)
        .filter(|&ell| (k as u128 * ell as u128).is_multiple_of(n as u128))
        .collect()
}

/// All valid pairs `(k, ell)` for the group `Z_n`, in lexicographic order.
pub fn classify_pairs(n: u64) -> Vec<PointPair> {
    assert!(n >= 1, "need n >= 1");
    let mut pairs = Vec::new();
    for k in 0..n {
        for ell in classify_twists(n, k) {
            pairs.push(PointPair { n, k, ell });
        }
    }
    pairs
}

/// Which route produced a [`KGroupPair`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Kernel/cokernel of the explicit Mayer–Vietoris matrix.
    Mv,
    /// Fixed submodule and `<1 - ξ^e>` quotient in closed form.
    ClosedForm,
}

/// The K-groups of a pair in both degrees, with provenance recorded for
/// cross-checking and an embedded generator basis for the degree-0 group.
#[derive(Clone, Debug)]
pub struct KGroupPair {
    pub k0: PresentedModule,
    pub k1: PresentedModule,
    pub provenance: Provenance,
    /// Embedded basis of `K^0`: kernel-lattice basis for the MV route
    /// (columns in `R(Z_d)^2`), orbit sums for the closed form (columns in
    /// `R(Z_d)`).
    pub k0_basis: Option<IntMatrix>,
}

impl KGroupPair {
    pub fn same_invariant_factors(&self, other: &KGroupPair) -> bool {
        self.k0.is_isomorphic_to(&other.k0) && self.k1.is_isomorphic_to(&other.k1)
    }
}

/// The Mayer–Vietoris middle map for a pair: the `2d x 2d` matrix of
/// `(x, y) -> (x - ξ^e y, x - y)` on `R(Z_d)^2`, in block form
/// `[[I, -P_e], [I, -I]]`. The twist is normalized so that one of its two
/// cell representations is trivial, which fixes the matrix uniquely.
pub fn mv_matrix(pair: &PointPair) -> IntMatrix {
    let d = pair.d() as usize;
    let e = pair.twist_exponent();
    let p = char_action_matrix(pair.d(), e);
    let i = IntMatrix::identity(d);
    let top = i.hstack(&-&p);
    let bottom = i.hstack(&-&i);
    top.vstack(&bottom)
}

/// K-groups by the Mayer–Vietoris route: `K^0` is the kernel lattice of the
/// middle map (free, saturated), `K^1` its cokernel.
pub fn compute_kgroups_mv(pair: &PointPair) -> KGroupPair {
    let m = mv_matrix(pair);
    let basis = kernel_basis(&m);
    KGroupPair {
        k0: PresentedModule::free(basis.cols()),
        k1: PresentedModule::cokernel(&m),
        provenance: Provenance::Mv,
        k0_basis: Some(basis),
    }
}

/// K-groups in closed form: `K^0 = R(Z_d)^{ξ^e}` with its orbit-sum basis
/// and `K^1 = R(Z_d)/<1 - ξ^e>`.
pub fn compute_kgroups_closed(pair: &PointPair) -> KGroupPair {
    let d = pair.d();
    let e = pair.twist_exponent();
    let inv = invariant_submodule(d, e);
    KGroupPair {
        k0: inv.module,
        k1: crate::repring::quotient_by_one_minus(d, e),
        provenance: Provenance::ClosedForm,
        k0_basis: Some(inv.basis),
    }
}

/// Input for the finite abelian computation: a group `G` acting on the
/// circle through a homomorphism to `Z_n` (one exponent per cyclic factor),
/// twisted by a character of the kernel `K`.
#[derive(Clone, Debug)]
pub struct AbelianPointInput {
    group: FiniteAbelianGroup,
    phi: Vec<u64>,
    n: u64,
    twist_char: Character,
}

impl AbelianPointInput {
    /// Validates that `phi` is a homomorphism into `Z_n` and that the twist
    /// character is defined on exactly the kernel of `phi`.
    pub fn new(
        group: FiniteAbelianGroup,
        phi: Vec<u64>,
        n: u64,
        twist_char: Character,
    ) -> Result<Self> {
        let kernel = kernel_of_hom(&group, &phi, n)?;
        if twist_char.group() != &kernel {
            return Err(Error::CharacterDomainMismatch {
                expected: kernel.factors().to_vec(),
                found: twist_char.group().factors().to_vec(),
            });
        }
        Ok(Self {
            group,
            phi,
            n,
            twist_char,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn phi(&self) -> &[u64] {
        &self.phi
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn kernel(&self) -> &FiniteAbelianGroup {
        self.twist_char.group()
    }

    pub fn twist_char(&self) -> &Character {
        &self.twist_char
    }

    /// Number of orbits of multiplication by the twist character on the
    /// irreducible characters of the kernel: `|K| / ord(ξ)`.
    pub fn orbit_count(&self) -> u64 {
        self.kernel().order() / self.twist_char.order()
    }
}

/// The permutation matrix of multiplication by `chi` on the irreducible
/// characters of its group, enumerated lexicographically as exponent tuples.
fn character_translation_matrix(chi: &Character) -> IntMatrix {
    let group = chi.group();
    let elements = group.elements();
    let index_of = |e: &[u64]| -> usize {
        let mut idx = 0usize;
        for (&v, &f) in e.iter().zip(group.factors()) {
            idx = idx * f as usize + v as usize;
        }
        idx
    };
    let size = elements.len();
    let mut m = IntMatrix::zero(size, size);
    for (c, e) in elements.iter().enumerate() {
        let shifted: Vec<u64> = e
            .iter()
            .zip(chi.exponents())
            .zip(group.factors())
            .map(|((&v, &a), &f)| (v + a) % f)
            .collect();
        m.set(index_of(&shifted), c, 1.into());
    }
    m
}

/// K-groups for a finite abelian group acting through `phi: G -> Z_n`,
/// twisted by a character `ξ` of the kernel `K`: kernel and cokernel of
/// `(x, y) -> (x - ξ y, x - y)` on `R(K)^2`, where `ξ` acts by translation
/// on the dual-group basis. Both groups are torsion-free of rank the number
/// of `ξ`-orbits on the irreducible characters of `K`.
pub fn compute_kgroups_abelian(input: &AbelianPointInput) -> KGroupPair {
    let p = character_translation_matrix(input.twist_char());
    let size = p.rows();
    let i = IntMatrix::identity(size);
    let m = i.hstack(&-&p).vstack(&i.hstack(&-&i));
    let basis = kernel_basis(&m);
    KGroupPair {
        k0: PresentedModule::free(basis.cols()),
        k1: PresentedModule::cokernel(&m),
        provenance: Provenance::Mv,
        k0_basis: Some(basis),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(n: u64, k: u64, ell: u64) -> PointPair {
        PointPair::new(n, k, ell).unwrap()
    }

    #[test]
    fn twist_classification() {
        assert_eq!(classify_twists(4, 2), vec![0, 2]);
        assert_eq!(classify_twists(6, 0), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(classify_twists(5, 2), vec![0]);
        // Always the multiples of n/gcd(n,k).
        for n in 1..=20 {
            for k in 0..n {
                let step = n / gcd(n, k);
                let expected: Vec<u64> = (0..gcd(n, k)).map(|t| t * step).collect();
                assert_eq!(classify_twists(n, k), expected);
            }
        }
    }

    #[test]
    fn pair_classification() {
        assert_eq!(classify_pairs(1), vec![pair(1, 0, 0)]);
        let p4 = classify_pairs(4);
        let expected: Vec<PointPair> = [
            (0, 0),
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 0),
            (2, 0),
            (2, 2),
            (3, 0),
        ]
        .iter()
        .map(|&(k, ell)| pair(4, k, ell))
        .collect();
        assert_eq!(p4, expected);
        for p in [2u64, 3, 5, 7] {
            assert_eq!(classify_pairs(p).len() as u64, 2 * p - 1);
        }
    }

    #[test]
    fn pairs_are_involution_closed() {
        for n in 1..=16 {
            let pairs = classify_pairs(n);
            for p in &pairs {
                assert!(pairs.contains(&pair(n, p.ell(), p.k())));
            }
        }
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        assert!(PointPair::new(4, 2, 1).is_err());
        assert!(PointPair::new(0, 0, 0).is_err());
        assert!(PointPair::new(4, 4, 0).is_err());
    }

    #[test]
    fn mv_matrix_shapes() {
        let m = mv_matrix(&pair(1, 0, 0));
        assert_eq!(m, IntMatrix::from_rows_i64(&[vec![1, -1], vec![1, -1]]));

        // (4,2,2): d = 2, e = 1, so the top-right block is minus the swap.
        let m = mv_matrix(&pair(4, 2, 2));
        assert_eq!(
            m,
            IntMatrix::from_rows_i64(&[
                vec![1, 0, 0, -1],
                vec![0, 1, -1, 0],
                vec![1, 0, -1, 0],
                vec![0, 1, 0, -1],
            ])
        );

        // Untwisted pairs give [[I, -I], [I, -I]] of size 2d.
        for n in 1..=10 {
            for k in 0..n {
                let p = pair(n, k, 0);
                let d = p.d() as usize;
                let i = IntMatrix::identity(d);
                let expected = i.hstack(&-&i).vstack(&i.hstack(&-&i));
                assert_eq!(mv_matrix(&p), expected);
            }
        }
    }

    #[test]
    fn kgroups_by_both_routes() {
        // (1,0,0): untwisted circle with trivial group, K^0 = K^1 = Z.
        let mv = compute_kgroups_mv(&pair(1, 0, 0));
        assert_eq!(mv.k0.rank(), 1);
        assert_eq!(mv.k1.rank(), 1);
        assert!(mv.k1.is_free());

        // (4,2,2): both groups free of rank 1 (gcd(2,1) = 1).
        let mv = compute_kgroups_mv(&pair(4, 2, 2));
        let closed = compute_kgroups_closed(&pair(4, 2, 2));
        assert_eq!(mv.k0.rank(), 1);
        assert_eq!(mv.k1.rank(), 1);
        assert!(mv.same_invariant_factors(&closed));

        // (4,0,2): d = 4, e = 2, two orbits.
        let mv = compute_kgroups_mv(&pair(4, 0, 2));
        assert_eq!(mv.k0.rank(), 2);
        assert_eq!(mv.k1.rank(), 2);
        assert!(mv.k1.is_free());

        // Untwisted pairs: both free of rank d.
        for n in 1..=10 {
            for k in 0..n {
                let p = pair(n, k, 0);
                let closed = compute_kgroups_closed(&p);
                assert_eq!(closed.k0.rank() as u64, p.d());
                assert_eq!(closed.k1.rank() as u64, p.d());
            }
        }
    }

    #[test]
    fn closed_form_ranks_for_trivial_bundle() {
        for n in 1..=12 {
            for ell in 0..n {
                let p = pair(n, 0, ell);
                let closed = compute_kgroups_closed(&p);
                assert_eq!(closed.k0.rank() as u64, gcd(n, ell));
                assert_eq!(closed.k1.rank() as u64, gcd(n, ell));
            }
        }
    }

    #[test]
    fn abelian_route_on_z2() {
        // G = Z_2, trivial action, nontrivial twist character: K^0 = K^1 = Z.
        let g = FiniteAbelianGroup::cyclic(2);
        let k = kernel_of_hom(&g, &[0], 1).unwrap();
        let chi = Character::new(k, vec![1]);
        let input = AbelianPointInput::new(g, vec![0], 1, chi).unwrap();
        let out = compute_kgroups_abelian(&input);
        assert_eq!(out.k0.rank(), 1);
        assert_eq!(out.k1.rank(), 1);
        assert!(out.k1.is_free());
        assert_eq!(input.orbit_count(), 1);
    }

    #[test]
    fn abelian_route_with_trivial_twist() {
        let g = FiniteAbelianGroup::new(vec![2, 3]);
        let k = kernel_of_hom(&g, &[0, 0], 1).unwrap();
        let order = k.order();
        let input = AbelianPointInput::new(g, vec![0, 0], 1, Character::trivial(k)).unwrap();
        let out = compute_kgroups_abelian(&input);
        assert_eq!(out.k0.rank() as u64, order);
        assert_eq!(out.k1.rank() as u64, order);
    }

    #[test]
    fn abelian_route_matches_cyclic_mv() {
        // G = Z_n with phi(x) = kx and the twist character of exponent
        // d*ell/n on the kernel reproduces the cyclic computation.
        for n in 1..=12u64 {
            for p in classify_pairs(n) {
                let g = FiniteAbelianGroup::cyclic(n);
                let kernel = kernel_of_hom(&g, &[p.k()], n).unwrap();
                assert_eq!(kernel.order(), p.d());
                let chi = if kernel.is_trivial() {
                    Character::trivial(kernel)
                } else {
                    Character::new(kernel, vec![p.twist_exponent()])
                };
                let input = AbelianPointInput::new(g, vec![p.k()], n, chi).unwrap();
                let abelian = compute_kgroups_abelian(&input);
                let mv = compute_kgroups_mv(&p);
                assert!(
                    abelian.same_invariant_factors(&mv),
                    "route mismatch at {p:?}"
                );
            }
        }
    }

    #[test]
    fn character_domain_is_checked() {
        let g = FiniteAbelianGroup::cyclic(4);
        let wrong = Character::trivial(FiniteAbelianGroup::cyclic(3));
        let err = AbelianPointInput::new(g, vec![2], 4, wrong).unwrap_err();
        assert!(matches!(err, Error::CharacterDomainMismatch { .. }));
    }
}
