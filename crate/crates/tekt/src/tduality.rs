//! T-dual pairs and the verification of the duality claims.
//!
//! The pair `(E_k, ell)` is T-dual to `(E_ell, k)`. The duality
//! transformation itself is an operator-theoretic push-pull composite and is
//! out of reach of a combinatorial model; what is verified here is exactly
//! what the structural proofs reduce it to:
//!
//! * the K-groups of dual pairs are abstractly isomorphic with a degree
//!   shift (identical invariant factors),
//! * the restrictions along `Z_d ⊆ Z_n`, `d = gcd(n, k)`, are isomorphisms
//!   onto the fixed submodules of the residual generator action on one
//!   diagram and injections onto `C ·` those fixed submodules on the other,
//! * the constant `C` is consistent: `n/(d·α) = β/β'` where `α`, `β`, `β'`
//!   are the multiplicative orders entering the proofs.
//!
//! Every report produced here states this scope in its checks rather than
//! claiming more than is computed.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::exactalg::{
    columns_basis, kernel_basis, solve, submodule_equal, IntMatrix, ModuleMap, PresentedModule,
};
use crate::ktheory::{compute_kgroups_closed, compute_kgroups_mv, PointPair};
use crate::report::{ModuleRecord, Subject, VerificationReport};
use crate::repring::{
    char_action_matrix, gcd, invariant_submodule, quotient_by_one_minus, restriction_ring_map,
};
use crate::restriction::{rest_k0_closed, rest_k1_closed, RestrictionContext};
use crate::{Error, Result};

/// The T-dual of a pair: `(E_k, ell) -> (E_ell, k)`. Valid by the symmetry
/// of the constraint, and an involution.
pub fn dual_pair(p: &PointPair) -> PointPair {
    PointPair::new(p.n(), p.ell(), p.k()).expect("dual of a valid pair is valid")
}

/// The integer constants entering the admissibility proof, together with
/// the independently computed multiplicative orders they are claimed to be.
///
/// `alpha`, `beta_prime` are orders in the cyclic group of order
/// `gcd(d, ell)`; `beta` is an order in `Z_{d'}`. The chain
/// `c_left = n/(d·alpha) = beta/beta_prime = c_right` is the constant `C`
/// scaling the right-diagram images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityConstants {
    pub n: u64,
    pub k: u64,
    pub ell: u64,
    pub d: u64,
    pub d_prime: u64,
    pub alpha: u64,
    pub beta: u64,
    pub beta_prime: u64,
    pub c_left: u64,
    pub c_right: u64,
    /// Order of `d·ell/n` in `Z_{gcd(d, ell)}`, by brute force.
    pub alpha_order: u64,
    /// Order of `d'·k/n` in `Z_{d'}`, by brute force.
    pub beta_order: u64,
    /// Order of `d'·k/n` in `Z_{gcd(d, ell)}`, by brute force.
    pub beta_prime_order: u64,
    /// Order of `d·ell/n` in the ambient `Z_d`. The alpha formula names the
    /// order in the quotient where `ξ` has order `gcd(d, ell)`; this field
    /// records the ambient reading so reports can show when the two differ.
    pub alpha_order_ambient: u64,
}

/// Smallest `t >= 1` with `a·t = 0 mod m`: the order of `a` in `Z_m`,
/// computed by brute force so it is independent of the gcd formulas it is
/// compared against.
fn additive_order(a: u64, m: u64) -> u64 {
    assert!(m >= 1);
    (1..=m)
        .find(|&t| (a as u128 * t as u128).is_multiple_of(m as u128))
        .expect("t = m always annihilates")
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    gcd(gcd(a, b), c)
}

/// Evaluates the constant formulas for a pair, asserting the chain
/// `c_left = c_right` and that each of `alpha`, `beta`, `beta_prime` equals
/// the brute-force multiplicative order it names. A `ConstantMismatch`
/// signals a genuine deviation and is expected never to fire.
pub fn duality_constants(p: &PointPair) -> Result<DualityConstants> {
    let (n, k, ell) = (p.n(), p.k(), p.ell());
    let mismatch = |detail: String| Error::ConstantMismatch { n, k, ell, detail };

    let d = p.d();
    let d_prime = gcd(n, ell);
    let e = p.twist_exponent();
    let f = dual_pair(p).twist_exponent();
    let gdl = gcd(d, ell);

    let alpha = gdl / gcd3(d, ell, e);
    let beta = d_prime / gcd(d_prime, f);
    let beta_prime = gdl / gcd3(d, ell, f);

    if n % (d * alpha) != 0 {
        return Err(mismatch(format!(
            "n/(d*alpha) is not an integer: n={n}, d={d}, alpha={alpha}"
        )));
    }
    let c_left = n / (d * alpha);
    if !beta.is_multiple_of(beta_prime) {
        return Err(mismatch(format!(
            "beta/beta' is not an integer: beta={beta}, beta'={beta_prime}"
        )));
    }
    let c_right = beta / beta_prime;
    if c_left != c_right {
        return Err(mismatch(format!("c_left={c_left} != c_right={c_right}")));
    }

    let alpha_order = additive_order(e % gdl, gdl);
    let beta_order = additive_order(f % d_prime, d_prime);
    let beta_prime_order = additive_order(f % gdl, gdl);
    let alpha_order_ambient = additive_order(e % d, d);
    if alpha != alpha_order {
        return Err(mismatch(format!(
            "alpha={alpha} != order {alpha_order} in Z_{gdl}"
        )));
    }
    if beta != beta_order {
        return Err(mismatch(format!(
            "beta={beta} != order {beta_order} in Z_{d_prime}"
        )));
    }
    if beta_prime != beta_prime_order {
        return Err(mismatch(format!(
            "beta'={beta_prime} != order {beta_prime_order} in Z_{gdl}"
        )));
    }

    Ok(DualityConstants {
        n,
        k,
        ell,
        d,
        d_prime,
        alpha,
        beta,
        beta_prime,
        c_left,
        c_right,
        alpha_order,
        beta_order,
        beta_prime_order,
        alpha_order_ambient,
    })
}

/// Which side of the dual pair a restricted K-group belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `(E_k, ell)` restricted to `Z_d`, where the bundle becomes trivial.
    Bundle,
    /// `(E_ell, k)` restricted to `Z_d`, where the twist becomes trivial.
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    One,
}

/// Modulus, restricted twist exponent and generator-action exponent of the
/// `Z_d`-restricted K-groups on the given side.
fn restricted_setting(p: &PointPair, side: Side) -> (u64, u64, u64) {
    let d = p.d();
    match side {
        // (d, 0, ell mod d): action by multiplication with ξ^{d·ell/n}.
        Side::Bundle => (d, p.ell() % d, p.twist_exponent()),
        // (d, ell mod d, 0): everything lives over Z_{gcd(d, ell)}, acted
        // on by ζ^{d'·k/n}.
        Side::Dual => {
            let modulus = gcd(d, p.ell());
            (modulus, 0, dual_pair(p).twist_exponent() % modulus)
        }
    }
}

/// The residual generator action on a restricted K-group: multiplication by
/// the stated monomial, realized on the presented module. A permutation-
/// induced automorphism.
pub fn generator_action(p: &PointPair, side: Side, degree: Degree) -> ModuleMap {
    let (modulus, twist_exp, action_exp) = restricted_setting(p, side);
    let action = char_action_matrix(modulus, action_exp);
    match degree {
        Degree::Zero => {
            let inv = invariant_submodule(modulus, twist_exp);
            let images = &action * &inv.basis;
            let matrix =
                solve(&inv.basis, &images).expect("monomial action preserves the fixed submodule");
            ModuleMap::new(inv.module.clone(), inv.module, matrix).expect("free modules")
        }
        Degree::One => {
            let quot = quotient_by_one_minus(modulus, twist_exp);
            ModuleMap::new(quot.clone(), quot, action)
                .expect("monomial action descends to the quotient")
        }
    }
}

/// Checks that the K-groups of a pair and its dual are abstractly
/// isomorphic with a degree shift, with both computation routes agreeing on
/// both sides. Witnesses carry the invariant factor lists.
pub fn verify_group_isomorphism(p: &PointPair) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new(Subject::Triple {
        n: p.n(),
        k: p.k(),
        ell: p.ell(),
    });
    let dual = dual_pair(p);

    let mv = compute_kgroups_mv(p);
    let closed = compute_kgroups_closed(p);
    let mv_dual = compute_kgroups_mv(&dual);
    let closed_dual = compute_kgroups_closed(&dual);

    let factors = |g: &PresentedModule| ModuleRecord::of(g).to_string();
    report.add_check(
        "mv_closed_agree",
        mv.same_invariant_factors(&closed),
        json!({ "k0": factors(&closed.k0), "k1": factors(&closed.k1) }),
    );
    report.add_check(
        "mv_closed_agree_dual",
        mv_dual.same_invariant_factors(&closed_dual),
        json!({ "k0": factors(&closed_dual.k0), "k1": factors(&closed_dual.k1) }),
    );
    report.add_check(
        "k0_iso",
        closed.k0.is_isomorphic_to(&closed_dual.k1),
        json!({ "k0": factors(&closed.k0), "dual_k1": factors(&closed_dual.k1) }),
    );
    report.add_check(
        "k1_iso",
        closed.k1.is_isomorphic_to(&closed_dual.k0),
        json!({ "k1": factors(&closed.k1), "dual_k0": factors(&closed_dual.k0) }),
    );
    report.finish(started)
}

/// The inclusion of the fixed submodule of an endomorphism into its module,
/// scaled by `scale`. The fixed submodule is the saturated preimage of the
/// relation lattice under `action - id`.
fn fixed_inclusion(action: &ModuleMap, scale: u64) -> ModuleMap {
    let module = action.target();
    let g = module.generators();
    let diff = action.matrix() - &IntMatrix::identity(g);
    let stacked = diff.hstack(&-module.relations());
    let basis = columns_basis(&kernel_basis(&stacked).row_slice(0, g));
    let scaled = basis.scale(&BigInt::from(scale));
    ModuleMap::new(PresentedModule::free(basis.cols()), module.clone(), scaled)
        .expect("free source maps are always well defined")
}

/// Presents the quotient `fixed / image` in the coordinates of the fixed
/// submodule and returns its invariant factors together with the rank of
/// the fixed submodule; `None` when the image is not contained in it.
fn fixed_over_image_factors(map: &ModuleMap, fixed: &ModuleMap) -> Option<(Vec<u64>, usize)> {
    let module = map.target();
    let f = fixed.matrix();
    // Coordinates of the image generators relative to [fixed | relations].
    let ambient = f.hstack(module.relations());
    let coords = solve(&ambient, map.matrix())?;
    let image_coords = coords.row_slice(0, f.cols());
    // Relations of the fixed module itself: preimage of the relation
    // lattice under the fixed basis.
    let stacked = f.hstack(&-module.relations());
    let fixed_relations = columns_basis(&kernel_basis(&stacked).row_slice(0, f.cols()));
    let fixed_rank = PresentedModule::from_relations(f.cols(), fixed_relations.clone()).rank();
    let quotient = PresentedModule::from_relations(f.cols(), fixed_relations.hstack(&image_coords));
    let factors = quotient
        .invariant_factors()
        .iter()
        .map(|x| u64::try_from(x).expect("index factor fits in u64"))
        .collect();
    Some((factors, fixed_rank))
}

/// Machine-checks the two restriction diagrams for a pair: builds the four
/// restriction maps along `Z_d ⊆ Z_n`, the fixed submodules of the
/// generator actions, and certifies isomorphism/image claims together with
/// the constant `C`. Failures are recorded in the report, never raised.
pub fn verify_admissibility_diagrams(p: &PointPair) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new(Subject::Triple {
        n: p.n(),
        k: p.k(),
        ell: p.ell(),
    });

    let constants = match duality_constants(p) {
        Ok(c) => {
            report.add_check(
                "gcd_chain",
                true,
                json!({ "c_left": c.c_left, "c_right": c.c_right }),
            );
            report.add_check(
                "alpha_order",
                true,
                json!({
                    "alpha": c.alpha,
                    "order": c.alpha_order,
                    "ambient_order": c.alpha_order_ambient,
                    "ambient_differs": c.alpha_order_ambient != c.alpha,
                }),
            );
            report.add_check(
                "beta_order",
                true,
                json!({ "beta": c.beta, "order": c.beta_order }),
            );
            report.add_check(
                "beta_prime_order",
                true,
                json!({ "beta_prime": c.beta_prime, "order": c.beta_prime_order }),
            );
            c
        }
        Err(err) => {
            report.add_check("gcd_chain", false, json!({ "error": err.to_string() }));
            return report.finish(started);
        }
    };
    let c = constants.c_left;

    let d = p.d();
    let ctx_bundle = RestrictionContext::new(p.n(), d, p.k(), p.ell()).expect("d divides n");
    let ctx_dual = RestrictionContext::new(p.n(), d, p.ell(), p.k()).expect("d divides n");

    let r0_bundle = rest_k0_closed(&ctx_bundle).expect("valid context");
    let r1_bundle = rest_k1_closed(&ctx_bundle).expect("valid context");
    let r0_dual = rest_k0_closed(&ctx_dual).expect("valid context");
    let r1_dual = rest_k1_closed(&ctx_dual).expect("valid context");

    let act0_bundle = generator_action(p, Side::Bundle, Degree::Zero);
    let act1_bundle = generator_action(p, Side::Bundle, Degree::One);
    let act0_dual = generator_action(p, Side::Dual, Degree::Zero);
    let act1_dual = generator_action(p, Side::Dual, Degree::One);

    // Left diagram: restrictions are isomorphisms onto the fixed
    // submodules.
    let left = [
        ("left_k0_fixed_iso", &r0_bundle, &act0_bundle),
        ("left_k1_fixed_iso", &r1_dual, &act1_dual),
    ];
    for (name, map, action) in left {
        let fixed = fixed_inclusion(action, 1);
        let injective = map.analyze().is_injective;
        let image_is_fixed = submodule_equal(map, &fixed).unwrap_or(false);
        report.add_check(
            name,
            injective && image_is_fixed,
            json!({ "fixed_rank": fixed.source().rank(), "injective": injective }),
        );
    }

    // Right diagram: injections onto C times the fixed submodules, with the
    // index of the image inside the fixed submodule re-extracting C.
    let right = [
        ("right_k1_image_C", &r1_bundle, &act1_bundle),
        ("right_k0_image_C", &r0_dual, &act0_dual),
    ];
    let mut index_witnesses = Vec::new();
    let mut index_ok = true;
    for (name, map, action) in right {
        let fixed = fixed_inclusion(action, 1);
        let scaled = fixed_inclusion(action, c);
        let injective = map.analyze().is_injective;
        let image_is_scaled_fixed = submodule_equal(map, &scaled).unwrap_or(false);
        report.add_check(
            name,
            injective && image_is_scaled_fixed,
            json!({ "c": c, "fixed_rank": fixed.source().rank(), "injective": injective }),
        );

        match fixed_over_image_factors(map, &fixed) {
            Some((factors, fixed_rank)) => {
                let expected: Vec<u64> = if c == 1 { vec![] } else { vec![c; fixed_rank] };
                index_ok &= factors == expected;
                index_witnesses.push(json!({
                    "check": name,
                    "index_factors": factors,
                    "expected": expected,
                }));
            }
            None => {
                index_ok = false;
                index_witnesses.push(json!({
                    "check": name,
                    "error": "image not contained in fixed submodule",
                }));
            }
        }
    }
    report.add_check(
        "c_index_match",
        index_ok,
        json!({ "c": c, "images": index_witnesses }),
    );

    // The sum length of the left-diagram degree-1 map is claimed to be the
    // multiplicative order beta'.
    report.add_check(
        "left_k1_sum_length",
        ctx_dual.copies() == constants.beta_prime,
        json!({ "sum_length": ctx_dual.copies(), "beta_prime": constants.beta_prime }),
    );

    // Two readings of the dual-side action exponent circulate: d'k/n, which
    // the restriction machinery yields and which every map here is built
    // from, and a variant d'k/ell. Record both; informational, never fails.
    let gdl = gcd(d, p.ell());
    let derived_exponent = dual_pair(p).twist_exponent() % gdl;
    let variant = if p.ell() == 0 {
        json!("undefined (ell = 0)")
    } else {
        let num = constants.d_prime as u128 * p.k() as u128;
        if !num.is_multiple_of(p.ell() as u128) {
            json!("not an integer")
        } else {
            json!(((num / p.ell() as u128) as u64) % gdl)
        }
    };
    let differs = variant != json!(derived_exponent);
    report.add_check(
        "exponent_variant_note",
        true,
        json!({ "derived_exponent": derived_exponent, "variant_exponent": variant, "differs": differs }),
    );

    report.finish(started)
}

/// The trivial-twist specifics: for `(E_k, 0)` against `(E_0, k)`, the ring
/// restriction `R(Z_n) -> R(Z_d)` is surjective with kernel lattice exactly
/// the ideal `<1 - ξ^k>`, and the degree-1 restriction image is
/// `(n/d) · R(Z_d)`.
pub fn verify_trivial_twist_specifics(n: u64, k: u64) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new(Subject::TrivialTwist { n, k });
    let d = gcd(n, k);

    let res = restriction_ring_map(n, d).expect("d divides n");
    let kernel = kernel_basis(&res);
    let ideal = &IntMatrix::identity(n as usize) - &char_action_matrix(n, k);
    let kernel_in_ideal = solve(&ideal, &kernel).is_some();
    let ideal_in_kernel = solve(&kernel, &ideal).is_some();
    report.add_check(
        "ek0_kernel_ideal",
        kernel_in_ideal && ideal_in_kernel,
        json!({ "kernel_rank": kernel.cols(), "ideal_rank": (n - d) }),
    );
    report.add_check(
        "ek0_restriction_surjective",
        PresentedModule::cokernel(&res).is_trivial(),
        serde_json::Value::Null,
    );

    let ctx = RestrictionContext::new(n, d, k, 0).expect("d divides n");
    let r1 = rest_k1_closed(&ctx).expect("valid context");
    let scaled = ModuleMap::new(
        PresentedModule::free(d as usize),
        r1.target().clone(),
        IntMatrix::identity(d as usize).scale(&BigInt::from(n / d)),
    )
    .expect("free source");
    let image_matches = submodule_equal(&r1, &scaled).unwrap_or(false);
    report.add_check("ek0_k1_image", image_matches, json!({ "scale": n / d }));

    report.finish(started)
}
