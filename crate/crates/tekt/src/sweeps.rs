//! Exhaustive verification suites over parameter ranges.
//!
//! A suite is enumerated into independent [`Instance`]s so callers can run
//! them in any order (or in parallel) and still obtain a deterministic
//! result set: every instance carries its full input, and reports are
//! sorted by subject afterwards. Randomized abelian inputs are drawn from a
//! fixed-seed generator at enumeration time, never at run time.

use serde_json::json;

use crate::ktheory::{
    classify_pairs, compute_kgroups_abelian, compute_kgroups_closed, compute_kgroups_mv,
    AbelianPointInput, PointPair,
};
use crate::report::{ModuleRecord, Subject, VerificationReport};
use crate::repring::{gcd, kernel_of_hom, Character, FiniteAbelianGroup};
use crate::restriction::{verify_restriction_agreement, RestrictionContext};
use crate::tduality::{
    duality_constants, verify_admissibility_diagrams, verify_group_isomorphism,
    verify_trivial_twist_specifics,
};

/// The verification suites exposed by the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Closed form vs Mayer–Vietoris agreement plus structure of the
    /// K-groups, per valid triple.
    KGroups,
    /// Closed-form restriction maps vs the block-map transport, per
    /// `(n, m | n, pair)` context.
    Restriction,
    /// Group isomorphism of dual pairs, the admissibility diagrams, and the
    /// trivial-twist specifics.
    Duality,
    /// The constant chain and multiplicative orders, aggregated per group
    /// order so the sweep scales to large `n`.
    Constants,
    /// Finite abelian inputs: randomized torsion-freeness and rank checks
    /// plus cross-route agreement on cyclic inputs.
    Abelian,
    /// Everything above.
    All,
}

/// One independently runnable verification unit.
#[derive(Clone, Debug)]
pub enum Instance {
    KGroups(PointPair),
    Restriction(RestrictionContext),
    Duality(PointPair),
    TrivialTwist {
        n: u64,
        k: u64,
    },
    ConstantsForOrder {
        n: u64,
    },
    Abelian {
        index: u64,
        input: AbelianPointInput,
    },
    AbelianCyclic(PointPair),
}

impl Instance {
    /// Stable ordering key; sweep output is normalized by this regardless
    /// of execution order.
    pub fn sort_key(&self) -> (u8, u64, u64, u64, u64, u64) {
        match self {
            Instance::KGroups(p) => (0, p.n(), 0, p.k(), p.ell(), 0),
            Instance::Restriction(c) => (1, c.n(), c.m(), c.k(), c.ell(), 0),
            Instance::Duality(p) => (2, p.n(), 0, p.k(), p.ell(), 0),
            Instance::TrivialTwist { n, k } => (3, *n, 0, *k, 0, 0),
            Instance::ConstantsForOrder { n } => (4, *n, 0, 0, 0, 0),
            Instance::AbelianCyclic(p) => (5, p.n(), 0, p.k(), p.ell(), 0),
            Instance::Abelian { index, .. } => (6, *index, 0, 0, 0, 0),
        }
    }

    pub fn run(&self) -> VerificationReport {
        match self {
            Instance::KGroups(pair) => run_kgroups(pair),
            Instance::Restriction(ctx) => verify_restriction_agreement(ctx),
            Instance::Duality(pair) => run_duality(pair),
            Instance::TrivialTwist { n, k } => verify_trivial_twist_specifics(*n, *k),
            Instance::ConstantsForOrder { n } => run_constants_for_order(*n),
            Instance::Abelian { index, input } => run_abelian(*index, input),
            Instance::AbelianCyclic(pair) => run_abelian_cyclic(pair),
        }
    }
}

fn run_kgroups(pair: &PointPair) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new(Subject::Triple {
        n: pair.n(),
        k: pair.k(),
        ell: pair.ell(),
    });
    let mv = compute_kgroups_mv(pair);
    let closed = compute_kgroups_closed(pair);
    let factors = |m: &crate::exactalg::PresentedModule| ModuleRecord::of(m).to_string();
    report.add_check(
        "mv_closed_agree",
        mv.same_invariant_factors(&closed),
        json!({
            "mv_k0": factors(&mv.k0), "mv_k1": factors(&mv.k1),
            "closed_k0": factors(&closed.k0), "closed_k1": factors(&closed.k1),
        }),
    );
    let torsion_free =
        mv.k0.is_free() && mv.k1.is_free() && closed.k0.is_free() && closed.k1.is_free();
    report.add_check("torsion_free", torsion_free, serde_json::Value::Null);
    let expected = gcd(pair.d(), pair.twist_exponent()) as usize;
    let ranks_ok = mv.k0.rank() == expected
        && mv.k1.rank() == expected
        && closed.k0.rank() == expected
        && closed.k1.rank() == expected;
    report.add_check(
        "rank_equals_orbit_count",
        ranks_ok,
        json!({ "expected": expected, "mv_k0": mv.k0.rank(), "mv_k1": mv.k1.rank() }),
    );
    report.finish(started)
}

fn run_duality(pair: &PointPair) -> VerificationReport {
    let started = std::time::Instant::now();
    let iso = verify_group_isomorphism(pair);
    let diagrams = verify_admissibility_diagrams(pair);
    let mut report = VerificationReport::new(iso.subject.clone());
    report.checks = iso.checks;
    report.checks.extend(diagrams.checks);
    report.finish(started)
}

fn run_constants_for_order(n: u64) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new(Subject::GroupOrder { n });
    let mut total = 0u64;
    let mut first_failure = None;
    for pair in classify_pairs(n) {
        total += 1;
        if let Err(err) = duality_constants(&pair) {
            if first_failure.is_none() {
                first_failure = Some(err.to_string());
            }
        }
    }
    report.add_check(
        "gcd_chain",
        first_failure.is_none(),
        json!({ "triples": total, "first_failure": first_failure }),
    );
    report.finish(started)
}

fn run_abelian(index: u64, input: &AbelianPointInput) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new(Subject::Abelian {
        index,
        factors: input.group().factors().to_vec(),
        n: input.n(),
    });
    let out = compute_kgroups_abelian(input);
    report.add_check(
        "torsion_free",
        out.k0.is_free() && out.k1.is_free(),
        json!({
            "phi": input.phi(),
            "twist_char": crate::report::CharacterRecord::of(input.twist_char()),
            "k0": ModuleRecord::of(&out.k0).to_string(),
            "k1": ModuleRecord::of(&out.k1).to_string(),
        }),
    );
    let orbits = input.orbit_count() as usize;
    report.add_check(
        "rank_equals_orbit_count",
        out.k0.rank() == orbits && out.k1.rank() == orbits,
        json!({ "orbits": orbits, "k0_rank": out.k0.rank(), "k1_rank": out.k1.rank() }),
    );
    report.finish(started)
}

fn run_abelian_cyclic(pair: &PointPair) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new(Subject::Triple {
        n: pair.n(),
        k: pair.k(),
        ell: pair.ell(),
    });
    // Rebuild the pair as an abelian input and compare routes.
    let group = FiniteAbelianGroup::cyclic(pair.n());
    let kernel = kernel_of_hom(&group, &[pair.k()], pair.n()).expect("multiplication map");
    let chi = if kernel.is_trivial() {
        Character::trivial(kernel)
    } else {
        Character::new(kernel, vec![pair.twist_exponent()])
    };
    let input = AbelianPointInput::new(group, vec![pair.k()], pair.n(), chi)
        .expect("cyclic input is valid");
    let abelian = compute_kgroups_abelian(&input);
    let mv = compute_kgroups_mv(pair);
    report.add_check(
        "abelian_matches_mv",
        abelian.same_invariant_factors(&mv),
        json!({
            "pair": { "n": pair.n(), "k": pair.k(), "ell": pair.ell() },
            "abelian_k0": ModuleRecord::of(&abelian.k0).to_string(),
            "mv_k0": ModuleRecord::of(&mv.k0).to_string(),
        }),
    );
    report.finish(started)
}

// A tiny deterministic generator (splitmix64) so sweep instances are
// reproducible across platforms without a dependency.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, bound: u64) -> u64 {
        assert!(bound >= 1);
        self.next() % bound
    }
}

/// A random finite abelian input with `|G| <= 64`: up to three cyclic
/// factors, a homomorphism into a random `Z_n` picked factorwise from the
/// valid exponents, and a random character of the kernel.
fn random_abelian_input(rng: &mut SplitMix64) -> AbelianPointInput {
    loop {
        let count = 1 + rng.below(3) as usize;
        let factors: Vec<u64> = (0..count).map(|_| 1 + rng.below(8)).collect();
        if factors.iter().product::<u64>() > 64 {
            continue;
        }
        let group = FiniteAbelianGroup::new(factors);
        let n = 1 + rng.below(12);
        // phi_i must be a multiple of n/gcd(n, m_i) for the map to be a
        // homomorphism.
        let phi: Vec<u64> = group
            .factors()
            .iter()
            .map(|&m| {
                let step = n / gcd(n, m);
                step * rng.below(gcd(n, m))
            })
            .collect();
        let kernel = kernel_of_hom(&group, &phi, n).expect("constructed to be valid");
        let exponents: Vec<u64> = kernel.factors().iter().map(|&f| rng.below(f)).collect();
        let chi = Character::new(kernel, exponents);
        return AbelianPointInput::new(group, phi, n, chi).expect("constructed to be valid");
    }
}

/// Enumerates the instances of a suite.
///
/// `max_n` bounds the group order for the exhaustive sweeps; `samples` and
/// `seed` control the randomized abelian inputs (the cyclic cross-route
/// comparison is additionally capped at `n <= 20`, past which the
/// per-triple cost dwarfs the information gained).
pub fn instances(suite: Suite, max_n: u64, samples: u64, seed: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::KGroups {
        for n in 1..=max_n {
            for pair in classify_pairs(n) {
                out.push(Instance::KGroups(pair));
            }
        }
    }
    if all || suite == Suite::Restriction {
        for n in 1..=max_n {
            for m in (1..=n).filter(|m| n % m == 0) {
                for pair in classify_pairs(n) {
                    let ctx = RestrictionContext::for_pair(&pair, m).expect("m divides n");
                    out.push(Instance::Restriction(ctx));
                }
            }
        }
    }
    if all || suite == Suite::Duality {
        for n in 1..=max_n {
            for pair in classify_pairs(n) {
                out.push(Instance::Duality(pair));
            }
            for k in 0..n {
                out.push(Instance::TrivialTwist { n, k });
            }
        }
    }
    if all || suite == Suite::Constants {
        for n in 1..=max_n {
            out.push(Instance::ConstantsForOrder { n });
        }
    }
    if all || suite == Suite::Abelian {
        for n in 1..=max_n.min(20) {
            for pair in classify_pairs(n) {
                out.push(Instance::AbelianCyclic(pair));
            }
        }
        let mut rng = SplitMix64(seed);
        for index in 0..samples {
            out.push(Instance::Abelian {
                index,
                input: random_abelian_input(&mut rng),
            });
        }
    }
    out
}

/// Runs a suite sequentially and returns the reports sorted by subject.
pub fn run_suite(suite: Suite, max_n: u64, samples: u64, seed: u64) -> Vec<VerificationReport> {
    let mut items = instances(suite, max_n, samples, seed);
    items.sort_by_key(Instance::sort_key);
    items.iter().map(Instance::run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kgroups_suite_small() {
        for report in run_suite(Suite::KGroups, 10, 0, 1) {
            assert!(report.passed(), "failed: {:?}", report);
        }
    }

    #[test]
    fn duality_suite_small() {
        for report in run_suite(Suite::Duality, 8, 0, 1) {
            assert!(report.passed(), "failed: {:?}", report);
        }
    }

    #[test]
    fn restriction_suite_small() {
        for report in run_suite(Suite::Restriction, 8, 0, 1) {
            assert!(report.passed(), "failed: {:?}", report);
        }
    }

    #[test]
    fn constants_suite_small() {
        let reports = run_suite(Suite::Constants, 50, 0, 1);
        assert_eq!(reports.len(), 50);
        for report in reports {
            assert!(report.passed());
        }
    }

    #[test]
    fn abelian_suite_is_deterministic() {
        let strip_elapsed = |mut reports: Vec<VerificationReport>| {
            for r in &mut reports {
                r.elapsed_seconds = 0.0;
            }
            reports
        };
        let a = strip_elapsed(run_suite(Suite::Abelian, 6, 20, 42));
        let b = strip_elapsed(run_suite(Suite::Abelian, 6, 20, 42));
        assert_eq!(a, b);
        for report in a {
            assert!(report.passed(), "failed: {:?}", report);
        }
    }

    #[test]
    fn instance_order_does_not_change_results() {
        let mut forward = instances(Suite::KGroups, 6, 0, 1);
        forward.sort_by_key(Instance::sort_key);
        let mut reversed: Vec<Instance> = forward.iter().rev().cloned().collect();
        reversed.sort_by_key(Instance::sort_key);
        let run = |items: &[Instance]| -> Vec<_> {
            items
                .iter()
                .map(|i| {
                    let mut r = i.run();
                    r.elapsed_seconds = 0.0;
                    r
                })
                .collect()
        };
        assert_eq!(run(&forward), run(&reversed));
    }
}
