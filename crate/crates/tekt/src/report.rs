//! Structured verification reports and the JSON wire records.
//!
//! Reports never carry live algebra objects: modules are flattened to
//! `{rank, torsion}` records and matrices to row-major entry arrays, so
//! serialized documents round-trip exactly.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exactalg::{IntMatrix, PresentedModule};
use crate::ktheory::PointPair;

/// Registered claim identifiers. Every check recorded in a report must use
/// one of these names, so downstream tooling can rely on them being stable.
pub const CHECK_NAMES: &[&str] = &[
    // K-group route agreement and structure
    "mv_closed_agree",
    "mv_closed_agree_dual",
    "torsion_free",
    "rank_equals_orbit_count",
    // T-duality group isomorphism
    "k0_iso",
    "k1_iso",
    // Restriction agreement through the block map
    "phi_ker_iso",
    "phi_coker_iso",
    "phi_coker_inverse",
    "mv_ident_iso",
    "k0_agree",
    "k1_agree",
    "phi_identifications",
    // Admissibility diagrams
    "left_k0_fixed_iso",
    "left_k1_fixed_iso",
    "right_k1_image_C",
    "right_k0_image_C",
    "c_index_match",
    "left_k1_sum_length",
    "exponent_variant_note",
    // Constant chain
    "gcd_chain",
    "alpha_order",
    "beta_order",
    "beta_prime_order",
    // Trivial-twist specifics
    "ek0_kernel_ideal",
    "ek0_restriction_surjective",
    "ek0_k1_image",
    // Finite abelian route
    "abelian_matches_mv",
];

/// A finitely generated abelian group on the wire: free rank plus the
/// nonzero invariant factors in divisibility order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl ModuleRecord {
    pub fn of(module: &PresentedModule) -> Self {
        let torsion = module
            .torsion()
            .iter()
            .map(|f| u64::try_from(f).expect("torsion factor fits in u64"))
            .collect();
        Self {
            rank: module.rank(),
            torsion,
        }
    }
}

impl std::fmt::Display for ModuleRecord {
    /// Renders like `Z^2 ⊕ Z/6`, or `0` for the trivial group.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// A matrix on the wire: explicit shape and row-major entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

impl MatrixRecord {
    pub fn of(matrix: &IntMatrix) -> Self {
        let entries = matrix
            .entries()
            .iter()
            .map(|e| i64::try_from(e).expect("report matrix entry fits in i64"))
            .collect();
        Self {
            rows: matrix.rows(),
            cols: matrix.cols(),
            entries,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub n: u64,
    pub k: u64,
    pub ell: u64,
}

impl From<&PointPair> for PairRecord {
    fn from(p: &PointPair) -> Self {
        Self {
            n: p.n(),
            k: p.k(),
            ell: p.ell(),
        }
    }
}

/// A group ring element on the wire.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingElementRecord {
    pub modulus: usize,
    pub coeffs: Vec<i64>,
}

impl RingElementRecord {
    pub fn of(element: &crate::repring::GroupRingElement) -> Self {
        let coeffs = element
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).expect("report coefficient fits in i64"))
            .collect();
        Self {
            modulus: element.modulus(),
            coeffs,
        }
    }
}

/// A character of a finite abelian group on the wire.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub factors: Vec<u64>,
    pub exponents: Vec<u64>,
}

impl CharacterRecord {
    pub fn of(chi: &crate::repring::Character) -> Self {
        Self {
            factors: chi.group().factors().to_vec(),
            exponents: chi.exponents().to_vec(),
        }
    }
}

/// What a report is about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subject {
    /// A single pair `(E_k, ell)` over `Z_n`.
    Triple { n: u64, k: u64, ell: u64 },
    /// All pairs for one group order, aggregated (used by the constants
    /// sweep, which covers orders far beyond what per-triple reports would
    /// make practical).
    GroupOrder { n: u64 },
    /// A restriction context `Z_m ⊆ Z_n` for a pair.
    Restriction { n: u64, m: u64, k: u64, ell: u64 },
    /// A trivial-twist pair `(E_k, 0)`, checked against its dual `(E_0, k)`.
    TrivialTwist { n: u64, k: u64 },
    /// A finite abelian input, identified by its sample index.
    Abelian {
        index: u64,
        factors: Vec<u64>,
        n: u64,
    },
}

impl Subject {
    /// Total order used to normalize sweep output independently of the
    /// execution order.
    pub fn sort_key(&self) -> (u8, u64, u64, u64, u64, u64) {
        match self {
            Subject::Triple { n, k, ell } => (0, *n, 0, *k, *ell, 0),
            Subject::GroupOrder { n } => (1, *n, 0, 0, 0, 0),
            Subject::Restriction { n, m, k, ell } => (2, *n, *m, *k, *ell, 0),
            Subject::TrivialTwist { n, k } => (3, *n, 0, *k, 0, 0),
            Subject::Abelian { index, .. } => (4, *index, 0, 0, 0, 0),
        }
    }
}

/// One verified claim: a registered name, the outcome, and witness data
/// (invariant factors, image generators, constants, ...).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

/// The structured outcome of running registered checks against one subject.
/// A report with any failing check is itself failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: Subject,
    pub checks: Vec<Check>,
    pub elapsed_seconds: f64,
}

impl VerificationReport {
    pub fn new(subject: Subject) -> Self {
        Self {
            subject,
            checks: Vec::new(),
            elapsed_seconds: 0.0,
        }
    }

    pub fn add_check(&mut self, name: &str, pass: bool, witness: Value) {
        assert!(
            CHECK_NAMES.contains(&name),
            "unregistered check name: {name}"
        );
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn finish(mut self, started: std::time::Instant) -> Self {
        self.elapsed_seconds = started.elapsed().as_secs_f64();
        self
    }
}
