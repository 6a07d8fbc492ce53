//! Exact linear algebra over the integers.
//!
//! Matrices carry arbitrary-precision entries; Smith normal form intermediate
//! values can exceed any fixed-width bound, so no fixed-size integer type is
//! used anywhere in the reduction paths. All values are immutable after
//! construction and every operation is a pure function.

mod matrix;
mod module;
mod smith;

pub use matrix::IntMatrix;
pub use module::{submodule_equal, MapAnalysis, ModuleMap, PresentedModule};
pub use smith::{
    columns_basis, kernel_basis, smith_full, smith_normal_form, solve, SmithDecomposition,
    SmithFull,
};
