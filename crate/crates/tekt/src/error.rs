use thiserror::Error;

/// Errors reported by the library.
///
/// Verification failures are not errors: sweeps record them in
/// [`crate::report::VerificationReport`] entries. An `Error` means the input
/// was ill-formed or an internal certificate could not be produced.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group ring modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("{m} does not divide {n}, so Z_{m} is not a subgroup of Z_{n}")]
    NotASubgroup { n: u64, m: u64 },

    #[error(
        "invalid pair (n={n}, k={k}, ell={ell}): need n >= 1, k < n, ell < n, k*ell = 0 mod n"
    )]
    InvalidPair { n: u64, k: u64, ell: u64 },

    #[error("map does not send source relations into the target relation lattice")]
    IllFormedMap,

    #[error("submodules live in structurally different target modules")]
    TargetMismatch,

    #[error("exponents do not define a homomorphism into Z_{n}: factor {index}")]
    IllFormedHom { n: u64, index: usize },

    #[error("character defined on {found:?}, expected the kernel {expected:?}")]
    CharacterDomainMismatch { expected: Vec<u64>, found: Vec<u64> },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("constant chain mismatch at (n={n}, k={k}, ell={ell}): {detail}")]
    ConstantMismatch {
        n: u64,
        k: u64,
        ell: u64,
        detail: String,
    },

    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
