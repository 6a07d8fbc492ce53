//! Queryable catalog of worked examples: the circle-group table over a
//! point, the rotation-sphere classification and duality rules, and the
//! basic no-flux rule.
//!
//! Circle-equivariant entries are stored facts, never recomputed: their
//! coefficient rings are not principal ideal domains and sit outside the
//! exact integer engine. Each entry carries a stable source anchor naming
//! the statement it encodes.

use serde::{Deserialize, Serialize};

use crate::ktheory::PointPair;
use crate::report::ModuleRecord;
use crate::{Error, Result};

/// What kind of statement a catalog entry encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatementKind {
    KgroupFormula,
    H3Class,
    DualPairRule,
}

/// The payload of a catalog entry, normalized to invariant-factor module
/// records where modules appear.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "payload", rename_all = "snake_case")]
pub enum Payload {
    /// The four twisted K-groups of the dual pair `(E_k, 0)` / `(E_0, P_k)`
    /// for the circle group over a point.
    CircleKgroups {
        k0_bundle: ModuleRecord,
        k1_bundle: ModuleRecord,
        k0_dual: ModuleRecord,
        k1_dual: ModuleRecord,
    },
    /// A twist classification group.
    ClassGroup { class: ModuleRecord },
    /// A T-dual pair assignment on the rotation sphere, with bundles
    /// classified by pairs of integers.
    SphereDualPair {
        pair_bundle: (i64, i64),
        pair_twist: (i64, i64),
        dual_bundle: (i64, i64),
        dual_twist: (i64, i64),
    },
    /// A cyclic-group pair assignment over a point.
    PointDualPair {
        pair: (u64, u64, u64),
        dual: (u64, u64, u64),
    },
}

/// One catalog statement with its integer inputs and source anchor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub inputs: Vec<i64>,
    pub kind: StatementKind,
    pub payload: Payload,
    pub source: String,
}

/// The circle-over-point table for `k >= 1`:
/// `K^0(E_k) = R(Z_k)` (free of rank `k`), `K^1(E_k) = 0`, and the dual
/// pair `(E_0, P_k)` with the degrees swapped.
///
/// The `k = 0` row is not part of the table (the trivial bundle admits a
/// full integer lattice of twists and its groups are not tabulated), so it
/// is rejected rather than invented.
pub fn s1_point_entry(k: u64) -> Result<CatalogEntry> {
    if k == 0 {
        return Err(Error::UnsupportedParameter(
            "circle-over-point table starts at k = 1; the k = 0 row is not tabulated".into(),
        ));
    }
    let free_k = ModuleRecord {
        rank: k as usize,
        torsion: vec![],
    };
    let zero = ModuleRecord {
        rank: 0,
        torsion: vec![],
    };
    Ok(CatalogEntry {
        id: format!("s1.point.k={k}"),
        inputs: vec![k as i64],
        kind: StatementKind::KgroupFormula,
        payload: Payload::CircleKgroups {
            k0_bundle: free_k.clone(),
            k1_bundle: zero.clone(),
            k0_dual: zero,
            k1_dual: free_k,
        },
        source: "circle-over-point k-group table".into(),
    })
}

/// The twist classification over the bundle `E_{p,q}` on the rotation
/// sphere: `Z^2` when `p = q = 0`, `Z` when exactly one of `p`, `q`
/// vanishes, trivial otherwise.
pub fn s2_h3(p: i64, q: i64) -> ModuleRecord {
    let rank = match (p == 0, q == 0) {
        (true, true) => 2,
        (true, false) | (false, true) => 1,
        (false, false) => 0,
    };
    ModuleRecord {
        rank,
        torsion: vec![],
    }
}

/// The rotation-sphere duality rules for parameters `(p, q)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct S2DualRule {
    /// `(E_{p,0}, P_q)` is dual to `(E_{0,q}, Q_p)`.
    pub axis_pair: ((i64, i64), i64),
    pub axis_dual: ((i64, i64), i64),
    /// `(E_{0,0}, P_{p,q})` is dual to `(E_{p,q}, 0)`: the no-flux rule for
    /// the trivial bundle, whose twists form `Z^2`.
    pub noflux_pair: ((i64, i64), (i64, i64)),
    pub noflux_dual: ((i64, i64), (i64, i64)),
}

pub fn s2_dual_rule(p: i64, q: i64) -> S2DualRule {
    S2DualRule {
        axis_pair: ((p, 0), q),
        axis_dual: ((0, q), p),
        noflux_pair: ((0, 0), (p, q)),
        noflux_dual: ((p, q), (0, 0)),
    }
}

/// The axis-rule involution: the dual of `(E_{p,0}, P_q)` is
/// `(E_{0,q}, Q_p)` and vice versa. Defined for bundles supported on one
/// axis, which are the ones carrying a `Z` of twists.
pub fn s2_axis_dual(bundle: (i64, i64), twist: i64) -> Result<((i64, i64), i64)> {
    match bundle {
        (0, 0) if twist == 0 => Ok(((0, 0), 0)),
        (0, 0) => Err(Error::UnsupportedParameter(
            "the trivial sphere bundle carries a Z^2 of twists; use the no-flux rule".into(),
        )),
        (p, 0) => Ok(((0, twist), p)),
        (0, q) => Ok(((twist, 0), q)),
        _ => Err(Error::UnsupportedParameter(
            "bundles with both classes nonzero carry no twists".into(),
        )),
    }
}

/// The no-flux rule over a point: `(E_k, 0)` is dual to `(E_0, k)`.
pub fn noflux_rule(n: u64, k: u64) -> Result<PointPair> {
    PointPair::new(n, k, 0)?;
    PointPair::new(n, 0, k)
}

/// Catalog dump over small parameter ranges: the circle table for
/// `1 <= k <= max_k`, the sphere classification and duality rules on the
/// grid `|p|, |q| <= grid`, and the point no-flux instances for `n <= max_k`.
pub fn catalog_entries(max_k: u64, grid: i64) -> Vec<CatalogEntry> {
    let mut entries = Vec::new();
    for k in 1..=max_k {
        entries.push(s1_point_entry(k).expect("k >= 1"));
    }
    for p in -grid..=grid {
        for q in -grid..=grid {
            entries.push(CatalogEntry {
                id: format!("s2.h3.p={p}.q={q}"),
                inputs: vec![p, q],
                kind: StatementKind::H3Class,
                payload: Payload::ClassGroup { class: s2_h3(p, q) },
                source: "rotation-sphere twist classification".into(),
            });
            let rule = s2_dual_rule(p, q);
            entries.push(CatalogEntry {
                id: format!("s2.dual.p={p}.q={q}"),
                inputs: vec![p, q],
                kind: StatementKind::DualPairRule,
                payload: Payload::SphereDualPair {
                    pair_bundle: rule.axis_pair.0,
                    pair_twist: (rule.axis_pair.1, 0),
                    dual_bundle: rule.axis_dual.0,
                    dual_twist: (rule.axis_dual.1, 0),
                },
                source: "rotation-sphere axis duality rule".into(),
            });
        }
    }
    for n in 1..=max_k {
        for k in 0..n {
            let dual = noflux_rule(n, k).expect("trivial twist is always valid");
            entries.push(CatalogEntry {
                id: format!("noflux.n={n}.k={k}"),
                inputs: vec![n as i64, k as i64],
                kind: StatementKind::DualPairRule,
                payload: Payload::PointDualPair {
                    pair: (n, k, 0),
                    dual: (dual.n(), dual.k(), dual.ell()),
                },
                source: "no-flux duality rule over a point".into(),
            });
        }
    }
    entries
}
