//! The report document emitted by every subcommand, in JSON or as a table.

use serde::{Deserialize, Serialize};

use tekt::catalog::CatalogEntry;
use tekt::ktheory::Provenance;
use tekt::report::{MatrixRecord, ModuleRecord, PairRecord, Subject, VerificationReport};
use tekt::tduality::DualityConstants;

/// What the verification results do and do not claim. The duality
/// transformation itself is an operator-theoretic composite outside the
/// combinatorial model; every emitted document states this up front.
pub const SCOPE: &str = "Checks group isomorphism and diagram image constraints; \
the duality transformation itself is not computed.";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub command: String,
    pub scope: String,
    pub timestamp: String,
    pub results: Vec<ResultRecord>,
    pub summary: Summary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ResultRecord {
    Kgroups(KGroupsRecord),
    Pair(PairEntry),
    Restriction(RestrictionRecord),
    Verification(VerificationReport),
    Constants(DualityConstants),
    Catalog(CatalogEntry),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KGroupsRecord {
    pub pair: PairRecord,
    pub mv: KGroupSide,
    pub closed: KGroupSide,
    pub routes_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KGroupSide {
    pub k0: ModuleRecord,
    pub k1: ModuleRecord,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub pair: PairRecord,
    pub dual: PairRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictionRecord {
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub ell: u64,
    pub k0_map: MatrixRecord,
    pub k1_map: MatrixRecord,
    pub report: VerificationReport,
}

impl ResultRecord {
    /// Whether this record counts as passed in the summary.
    pub fn passed(&self) -> bool {
        match self {
            ResultRecord::Kgroups(r) => r.routes_agree,
            ResultRecord::Pair(_) | ResultRecord::Catalog(_) => true,
            ResultRecord::Restriction(r) => r.report.passed(),
            ResultRecord::Verification(r) => r.passed(),
            ResultRecord::Constants(_) => true,
        }
    }
}

impl ReportDocument {
    pub fn new(command: String, results: Vec<ResultRecord>) -> Self {
        let total = results.len();
        let passed = results.iter().filter(|r| r.passed()).count();
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            scope: SCOPE.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            results,
            summary: Summary {
                total,
                passed,
                failed: total - passed,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.command));
        out.push_str(&format!("# {}\n", self.scope));
        for record in &self.results {
            out.push_str(&render_record(record));
        }
        out.push_str(&format!(
            "summary: total={} passed={} failed={}\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }
}

fn subject_label(subject: &Subject) -> String {
    match subject {
        Subject::Triple { n, k, ell } => format!("triple n={n} k={k} twist={ell}"),
        Subject::GroupOrder { n } => format!("order n={n}"),
        Subject::Restriction { n, m, k, ell } => {
            format!("restriction n={n} m={m} k={k} twist={ell}")
        }
        Subject::TrivialTwist { n, k } => format!("trivial-twist n={n} k={k}"),
        Subject::Abelian { index, factors, n } => {
            format!("abelian #{index} G={factors:?} n={n}")
        }
    }
}

fn render_verification(report: &VerificationReport) -> String {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    let mut line = format!(
        "{} [{status}] {} checks\n",
        subject_label(&report.subject),
        report.checks.len()
    );
    for check in report.failed_checks() {
        line.push_str(&format!(
            "    failed: {} witness={}\n",
            check.name, check.witness
        ));
    }
    line
}

fn render_record(record: &ResultRecord) -> String {
    match record {
        ResultRecord::Kgroups(r) => format!(
            "pair n={} k={} twist={}\n  K^0 = {}   K^1 = {}   routes agree: {}\n",
            r.pair.n, r.pair.k, r.pair.ell, r.closed.k0, r.closed.k1, r.routes_agree
        ),
        ResultRecord::Pair(p) => format!(
            "(k={}, twist={})  <->  dual (k={}, twist={})\n",
            p.pair.k, p.pair.ell, p.dual.k, p.dual.ell
        ),
        ResultRecord::Restriction(r) => format!(
            "restriction n={} m={} k={} twist={}\n  K^0 map {}x{}, K^1 map {}x{}\n{}",
            r.n,
            r.m,
            r.k,
            r.ell,
            r.k0_map.rows,
            r.k0_map.cols,
            r.k1_map.rows,
            r.k1_map.cols,
            render_verification(&r.report)
        ),
        ResultRecord::Verification(v) => render_verification(v),
        ResultRecord::Constants(c) => format!(
            "n={} k={} twist={}: d={} d'={} alpha={} beta={} beta'={} C={}\n",
            c.n, c.k, c.ell, c.d, c.d_prime, c.alpha, c.beta, c.beta_prime, c.c_left
        ),
        ResultRecord::Catalog(e) => format!("{} [{:?}] source: {}\n", e.id, e.kind, e.source),
    }
}
