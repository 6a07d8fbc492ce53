//! Exact computation and verification of twisted equivariant K-theory for
//! circle actions of finite cyclic groups.
//!
//! Everything is computed over the integers, with no floating point and no
//! modular shortcuts: K-groups are finitely generated abelian groups obtained
//! as kernels and cokernels of integer matrices, and every structural claim
//! (closed forms, restriction maps, T-duality isomorphisms, the gcd constant
//! chain) is certified by exact linear algebra over Z.
//!
//! The crate is organized around the objects it computes:
//!
//! * [`exactalg`] — Smith normal form, presented abelian groups, module maps.
//! * [`repring`] — representation rings of finite cyclic and abelian groups.
//! * [`ktheory`] — K-groups of equivariant circle bundles over a point, by
//!   Mayer–Vietoris matrices and by closed forms.
//! * [`restriction`] — restriction maps along subgroup inclusions, in closed
//!   form and through the block map `Φ`, with agreement certificates.
//! * [`tduality`] — T-dual pairs, group isomorphism checks, diagram and
//!   constant verification.
//! * [`catalog`] — stored example tables and duality rules.
//! * [`report`] — structured verification reports and the JSON wire types.
//! * [`sweeps`] — exhaustive verification suites over parameter ranges.

pub mod catalog;
mod error;
pub mod exactalg;
pub mod ktheory;
pub mod report;
pub mod repring;
pub mod restriction;
pub mod sweeps;
pub mod tduality;

pub use error::{Error, Result};
