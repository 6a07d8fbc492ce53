use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::smith::{columns_basis, kernel_basis, smith_full, SmithFull};
use super::IntMatrix;
use crate::{Error, Result};

/// A finitely generated abelian group presented by generators and relations.
///
/// Relations are stored as columns: the module is `Z^g / col(relations)`,
/// matching the cokernel-of-a-matrix convention of the Mayer–Vietoris
/// sequences. A module with no relation columns is free of rank `g`.
///
/// Invariant factors are computed once at construction and normalized:
/// factors equal to 1 are dropped, the nonzero factors form a divisibility
/// chain in ascending order, and the free rank is recorded as trailing
/// zeros. Two presented modules are abstractly isomorphic exactly when their
/// normalized invariant factors agree.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    generators: usize,
    relations: IntMatrix,
    invariant_factors: Vec<BigInt>,
    smith: SmithFull,
}

impl PresentedModule {
    pub fn from_relations(generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(
            relations.rows(),
            generators,
            "relation columns must live in the generator space"
        );
        let smith = smith_full(&relations);
        let mut invariant_factors: Vec<BigInt> = smith
            .d
            .diagonal_entries()
            .into_iter()
            .filter(|e| !e.is_zero() && *e != BigInt::from(1))
            .collect();
        let rank = generators - smith.rank();
        invariant_factors.extend(std::iter::repeat_n(BigInt::zero(), rank));
        Self {
            generators,
            relations,
            invariant_factors,
            smith,
        }
    }

    /// The free module of the given rank.
    pub fn free(rank: usize) -> Self {
        Self::from_relations(rank, IntMatrix::zero(rank, 0))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// The target of `a` presented as a module with relations the columns
    /// of `a`, i.e. `coker(a) = Z^rows / col(a)`.
    pub fn cokernel(a: &IntMatrix) -> Self {
        Self::from_relations(a.rows(), a.clone())
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Normalized invariant factors; trailing zeros denote the free rank.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Free rank: the number of trailing zero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|f| f.is_zero())
            .count()
    }

    /// The nonzero invariant factors, in divisibility order.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|f| !f.is_zero())
            .cloned()
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion().is_empty()
    }

    pub fn is_isomorphic_to(&self, other: &PresentedModule) -> bool {
        self.invariant_factors == other.invariant_factors
    }

    /// Structural equality of presentations (generators and relation
    /// matrix), the precondition for comparing maps and submodules.
    pub fn same_presentation(&self, other: &PresentedModule) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }

    /// Whether `v` lies in the relation lattice, i.e. represents zero.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        assert_eq!(
            v.len(),
            self.generators,
            "element length must match generators"
        );
        let w = self.smith.u.mul_vec(v);
        let rank = self.smith.rank();
        for (i, wi) in w.iter().enumerate() {
            if i < rank {
                if !(wi % self.smith.d.entry(i, i)).is_zero() {
                    return false;
                }
            } else if !wi.is_zero() {
                return false;
            }
        }
        true
    }

    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&diff)
    }

    /// Canonical representative of the class of `v` modulo the relation
    /// lattice, obtained by reducing Smith coordinates into `[0, d_i)`.
    /// Deterministic, so representatives are directly comparable.
    pub fn normal_form(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(
            v.len(),
            self.generators,
            "element length must match generators"
        );
        let mut w = self.smith.u.mul_vec(v);
        let rank = self.smith.rank();
        for (i, wi) in w.iter_mut().enumerate().take(rank) {
            let di = self.smith.d.entry(i, i);
            *wi = wi.mod_floor(di);
        }
        self.smith.u_inv.mul_vec(&w)
    }
}

/// A homomorphism between presented modules, given by an integer matrix on
/// generators (`target.generators x source.generators`).
///
/// Construction certifies well-definedness: the image of every source
/// relation column must lie in the integer column span of the target
/// relations, checked by an exact solve.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: PresentedModule,
    target: PresentedModule,
    matrix: IntMatrix,
}

/// Kernel and image of a [`ModuleMap`], computed on the quotient level.
#[derive(Clone, Debug)]
pub struct MapAnalysis {
    pub kernel: PresentedModule,
    pub image: PresentedModule,
    pub is_injective: bool,
    pub is_surjective: bool,
}

impl MapAnalysis {
    pub fn is_bijective(&self) -> bool {
        self.is_injective && self.is_surjective
    }
}

impl ModuleMap {
    pub fn new(
        source: PresentedModule,
        target: PresentedModule,
        matrix: IntMatrix,
    ) -> Result<Self> {
        if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
            return Err(Error::IllFormedMap);
        }
        let relation_images = &matrix * source.relations();
        if crate::exactalg::solve(target.relations(), &relation_images).is_none() {
            return Err(Error::IllFormedMap);
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(module: &PresentedModule) -> Self {
        Self {
            source: module.clone(),
            target: module.clone(),
            matrix: IntMatrix::identity(module.generators()),
        }
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ rhs`, defined when `rhs` lands in the presentation `self`
    /// starts from.
    pub fn compose(&self, rhs: &ModuleMap) -> Result<ModuleMap> {
        if !rhs.target.same_presentation(&self.source) {
            return Err(Error::TargetMismatch);
        }
        ModuleMap::new(
            rhs.source.clone(),
            self.target.clone(),
            &self.matrix * &rhs.matrix,
        )
    }

    /// Whether two maps with identical presentations agree on every
    /// generator, i.e. are equal as maps between the quotients.
    pub fn maps_equal(&self, other: &ModuleMap) -> bool {
        assert!(
            self.source.same_presentation(&other.source)
                && self.target.same_presentation(&other.target),
            "maps_equal requires identical presentations"
        );
        (0..self.matrix.cols()).all(|j| {
            let a = self.matrix.column(j);
            let b = other.matrix.column(j);
            self.target.elements_equal(&a, &b)
        })
    }

    /// Kernel, image and the induced injectivity/surjectivity flags.
    ///
    /// Relations are folded in via stacked-matrix kernel computations: the
    /// preimage of the target relation lattice under the matrix gives the
    /// kernel generators, and the same lattice construction presents the
    /// image as a subgroup of the target quotient.
    pub fn analyze(&self) -> MapAnalysis {
        let gs = self.source.generators();

        // Preimage lattice {x : F x in col(R_t)} via ker [F | -R_t].
        let stacked = self.matrix.hstack(&-self.target.relations());
        let kb = kernel_basis(&stacked);
        let preimage = columns_basis(&kb.row_slice(0, gs));

        // Kernel of the induced map: preimage / col(R_s).
        let p = preimage.cols();
        let stacked2 = preimage.hstack(&-self.source.relations());
        let kb2 = kernel_basis(&stacked2);
        let kernel_relations = columns_basis(&kb2.row_slice(0, p));
        let kernel = PresentedModule::from_relations(p, kernel_relations);

        // Image: generated by the columns of F, with relations the preimage
        // lattice of col(R_t).
        let image_relations = columns_basis(&kb.row_slice(0, gs));
        let image = PresentedModule::from_relations(gs, image_relations);

        let is_injective = kernel.is_trivial();
        let is_surjective =
            PresentedModule::cokernel(&self.matrix.hstack(self.target.relations())).is_trivial();

        MapAnalysis {
            kernel,
            image,
            is_injective,
            is_surjective,
        }
    }
}

/// Whether two maps into the same presented target have equal images as
/// subgroups of the target, i.e. the image sublattices saturated with the
/// target relations coincide. Decided by mutual containment via exact solves.
pub fn submodule_equal(f: &ModuleMap, g: &ModuleMap) -> Result<bool> {
    if !f.target().same_presentation(g.target()) {
        return Err(Error::TargetMismatch);
    }
    let rt = f.target().relations();
    let f_in_g = crate::exactalg::solve(&g.matrix().hstack(rt), f.matrix()).is_some();
    let g_in_f = crate::exactalg::solve(&f.matrix().hstack(rt), g.matrix()).is_some();
    Ok(f_in_g && g_in_f)
}
