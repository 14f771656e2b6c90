//! The end-to-end verification suite: one check per acceptance criterion,
//! each with a stable identifier.

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{enumerate_basis, Engine, Mode};
use crate::exactnum::Rat;
use crate::ideal::{
    buchberger, builtin_spectrum, c2_nilpotency_targets, c2_relations, verify_spectrum, zhu_relations,
};
use crate::qseries::{
    all_module_characters, eta, eta_modular_check, exponent_rat, generic_char_c65, numeric_modular_check,
    q_units, s_tau_char, twisted_base_chars, xi, EtaScale, QSeries, Recipe, VirasoroLabel, DEN,
};
use crate::reference::{builtin_vector, published_descendants, published_zhu_images, BUILTIN_NAMES};
use crate::singular::{descendants_of_v12, find_singular};
use crate::zhu::{check_identities, global_zhu_map, zhu_image, BiPoly, PowerProduct};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_ids(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }
}

type Outcome = Result<String, String>;

/// Check identifiers in report order.
pub const CHECK_IDS: [&str; 10] = [
    "basis-count",
    "singular-scan",
    "singular-vector-reference",
    "zhu-image-reference",
    "zhu-identities",
    "spectrum-certification",
    "c2-consequences",
    "character-expansions",
    "character-identities",
    "modular-numeric",
];

fn run_one(id: &'static str) -> CheckResult {
    let start = Instant::now();
    let outcome = match id {
        "basis-count" => basis_count(),
        "singular-scan" => singular_scan(),
        "singular-vector-reference" => singular_vector_reference(),
        "zhu-image-reference" => zhu_image_reference(),
        "zhu-identities" => zhu_identities(),
        "spectrum-certification" => spectrum_certification(),
        "c2-consequences" => c2_consequences(),
        "character-expansions" => character_expansions(),
        "character-identities" => character_identities(),
        "modular-numeric" => modular_numeric(),
        _ => Err(format!("unknown check {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult { id, passed, detail, elapsed_ms: start.elapsed().as_millis() }
}

/// Run the named checks (all of them for an empty list) in parallel; results keep `CHECK_IDS` order.
pub fn run_checks(only: &[&str]) -> VerificationReport {
    let ids: Vec<&'static str> =
        CHECK_IDS.iter().copied().filter(|id| only.is_empty() || only.contains(id)).collect();
    VerificationReport { checks: ids.into_par_iter().map(run_one).collect() }
}

pub fn run_all() -> VerificationReport {
    run_checks(&[])
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Coefficients of `q^0 … q^{n−1}` of a series with integral exponents.
fn integer_coefficients(s: &QSeries, n: i64) -> Vec<Rat> {
    (0..n).map(|k| s.coefficient(k * DEN)).collect()
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&k| Rat::int(k)).collect()
}

fn basis_count() -> Outcome {
    let n12 = enumerate_basis(12).len();
    ensure(n12 == 76, || format!("weight 12 has {n12} monomials"))?;
    // graded dimension ∏_{n≥2} 1/(1−qⁿ) · ∏_{n≥3} 1/(1−qⁿ), built independently of the enumerator
    let t = q_units(17);
    let mut denom = QSeries::one(t);
    for start in [2, 3] {
        for n in start..17 {
            denom = denom.mul(&QSeries::from_terms([(0, Rat::one()), (n * DEN, Rat::int(-1))], t));
        }
    }
    let gen = denom.inverse().map_err(|e| e.to_string())?;
    for h in 0..=16 {
        let got = enumerate_basis(h as u32).len();
        let want = gen.coefficient(h * DEN);
        ensure(Rat::int(got as i64) == want, || format!("weight {h}: {got} monomials, expected {want}"))?;
    }
    Ok("76 monomials at weight 12; weights 0..16 match the generating function".into())
}

fn singular_scan() -> Outcome {
    let dims: Vec<usize> = (1..=12).map(|h| find_singular(h).kernel_dimension).collect();
    let want: Vec<usize> = (1..=12).map(|h| usize::from(h == 12)).collect();
    ensure(dims == want, || format!("kernel dimensions for weights 1..12: {dims:?}"))?;
    Ok("kernel dimension 0 for weights 1..11 and 1 at weight 12".into())
}

fn singular_vector_reference() -> Outcome {
    let d = descendants_of_v12();
    for ((name, computed), (ref_name, published)) in d.named().into_iter().zip(published_descendants()) {
        debug_assert_eq!(name, ref_name);
        let diff = computed - &published;
        ensure(diff.is_empty(), || format!("{name} differs from reference in {} terms", diff.len()))?;
    }
    let j0 = Engine::global().apply_mode(Mode::j(0), &d.v12);
    ensure(j0.is_zero(), || format!("J(0)v12 = {j0}"))?;
    Ok(format!("v12 ({} terms) and three descendants match; J(0)v12 = 0", d.v12.len()))
}

fn zhu_image_reference() -> Outcome {
    for (name, published) in published_zhu_images() {
        let got = zhu_image(&builtin_vector(name).map_err(|e| e.to_string())?);
        ensure(got == published, || format!("[{name}] = {got}, reference {published}"))?;
    }
    Ok(format!("images of {} match exactly", BUILTIN_NAMES.join(", ")))
}

fn zhu_identities() -> Outcome {
    let r = check_identities(global_zhu_map(), 9);
    ensure(r.failures.is_empty(), || format!("{} failures, first: {}", r.failures.len(), r.failures[0]))?;
    Ok(format!("{} identities on {} monomials of weight <= 9", r.checks, r.monomials))
}

fn spectrum_certification() -> Outcome {
    let table = builtin_spectrum();
    let pairs = table.pairing().map_err(|f| f.to_string())?;
    ensure(pairs.len() == 20, || format!("{} paired modules", pairs.len()))?;
    let report = verify_spectrum(&zhu_relations(), &table.points);
    match report.failure {
        None => Ok(format!("quotient dimension {}; 20 distinct zeros", report.quotient_dimension)),
        Some(f) => Err(f.to_string()),
    }
}

fn poly(terms: &[(u32, u32, Rat)]) -> BiPoly {
    let mut p = BiPoly::zero();
    for (dx, dy, c) in terms {
        p.add_term(PowerProduct::new(*dx, *dy), c.clone());
    }
    p
}

/// The three C₂ relations as they are usually displayed (up to scale).
fn displayed_c2_relations() -> [BiPoly; 3] {
    [
        poly(&[(6, 0, Rat::frac(-59680000, 3501)), (3, 2, Rat::frac(-184400, 1167)), (0, 4, Rat::one())]),
        poly(&[(2, 3, Rat::int(-926640)), (5, 1, Rat::int(-89856000))]),
        poly(&[(7, 0, Rat::int(21565440000)), (4, 2, Rat::int(-680659200)), (1, 4, Rat::int(-5559840))]),
    ]
}

fn c2_consequences() -> Outcome {
    let rels = c2_relations();
    for (k, (got, shown)) in rels.iter().zip(displayed_c2_relations()).enumerate() {
        ensure(got.proportionality(&shown).is_some(), || format!("relation {k}: {got} is not proportional to {shown}"))?;
    }
    let gb = buchberger(&rels);
    for t in c2_nilpotency_targets() {
        ensure(gb.contains(&t), || format!("{t} is not in the C2 ideal"))?;
    }
    Ok("three relations proportional to the displayed ones; x^8, x^2y^4, x^5y^2, y^8 in the ideal".into())
}

fn xi_series(m: i64, r: i64, s: i64, t: i64) -> Result<QSeries, String> {
    xi(VirasoroLabel::new(m, r, s).map_err(|e| e.to_string())?, t).map_err(|e| e.to_string())
}

fn character_expansions() -> Outcome {
    let t = q_units(8);
    let chars = all_module_characters(t);
    let ch = |name: &str| chars.iter().find(|(d, _)| d.name == name).map(|(_, c)| c.clone()).expect("module");
    let ch_m = ch("M(0)").add(&ch("M(1)")).add(&ch("M(2)"));
    let want_m = ints(&[1, 0, 3, 4, 9, 12, 22]);
    ensure(integer_coefficients(&ch_m, 7) == want_m, || format!("ch M = {ch_m}"))?;
    let from_virasoro = xi_series(1, 1, 1, t)?
        .mul(&xi_series(2, 1, 1, t)?)
        .add(&xi_series(1, 2, 1, t)?.mul(&xi_series(2, 3, 1, t)?))
        .shift(DEN / 20);
    ensure(integer_coefficients(&from_virasoro, 7) == want_m, || format!("Virasoro product = {from_virasoro}"))?;

    let mut generic = QSeries::zero(t);
    for (h, mult) in [(0, 1), (2, 2), (3, 1), (4, 2), (6, 1)] {
        let g = generic_char_c65(&Rat::int(h), t).map_err(|e| e.to_string())?;
        generic = generic.add(&g.scale(&Rat::int(mult)));
    }
    let residual = ch_m.sub(&generic).truncate(7 * DEN);
    ensure(residual.is_zero(), || format!("ch M minus generic decomposition = {residual}"))?;

    let s = s_tau_char(t);
    let third = DEN / 3;
    let lead_s = DEN / 9;
    let s_coefs: Vec<Rat> = (0..5).map(|k| s.coefficient(lead_s + k * third)).collect();
    ensure(s_coefs == ints(&[1, 1, 2, 2, 4]), || format!("ch S = {s}"))?;
    let eq = eta(EtaScale::One, t + DEN).div(&eta(EtaScale::Third, t + DEN)).map_err(|e| e.to_string())?;
    let s_from_eta = eq.shift(DEN / 12).truncate(t);
    ensure(s_from_eta == s, || "ch S differs from q^(1/12) eta(z)/eta(z/3)".into())?;

    let (mt, wt) = twisted_base_chars(t);
    let charge = DEN / 20;
    let mt = mt.shift(charge);
    let wt = wt.shift(charge);
    let m_coefs: Vec<Rat> = (0..5).map(|k| mt.coefficient(lead_s + k * third)).collect();
    ensure(m_coefs == ints(&[1, 0, 1, 1, 1]), || format!("ch M_T = {mt}"))?;
    let lead_w = 2 * DEN / 45;
    let w_coefs: Vec<Rat> = (0..5).map(|k| wt.coefficient(lead_w + k * third)).collect();
    ensure(w_coefs == ints(&[1, 1, 1, 1, 2]), || format!("ch W_T = {wt}"))?;
    Ok("ch M, its generic c=6/5 decomposition, ch S, ch M_T and ch W_T match through the listed orders".into())
}

fn character_identities() -> Outcome {
    let t = q_units(20);
    let x = |r, s| xi_series(3, r, s, t + DEN);
    let det = x(1, 1)?.add(&x(4, 1)?).mul(&x(3, 3)?).sub(&x(2, 1)?.add(&x(3, 1)?).mul(&x(4, 3)?)).truncate(t);
    ensure(det == QSeries::one(t), || format!("determinant = {det}"))?;

    let (mt, wt) = twisted_base_chars(t + DEN);
    let eq = eta(EtaScale::One, t + 2 * DEN).div(&eta(EtaScale::Third, t + 2 * DEN)).map_err(|e| e.to_string())?;
    let chi0 = mt.mul(&x(1, 1)?.add(&x(4, 1)?)).add(&wt.mul(&x(2, 1)?.add(&x(3, 1)?)));
    ensure(chi0.truncate(t) == eq.truncate(t), || "first eta-quotient decomposition fails".into())?;
    let chi1 = mt.mul(&x(4, 3)?).add(&wt.mul(&x(3, 3)?));
    ensure(chi1.truncate(t) == eq.truncate(t), || "second eta-quotient decomposition fails".into())?;

    let chars = all_module_characters(t);
    for (d, ch) in &chars {
        ensure(ch.truncation() == t, || format!("{}: truncation {}", d.name, ch.truncation()))?;
        let bad = ch.terms().find(|(_, c)| c.is_negative() || !c.is_integer());
        ensure(bad.is_none(), || format!("{}: coefficient {:?}", d.name, bad))?;
        let lead = exponent_rat(ch.valuation());
        ensure(lead == d.top_weight, || format!("{}: leading exponent {lead}, top weight {}", d.name, d.top_weight))?;
        let top = ch.leading().map(|(_, c)| c.clone()).unwrap_or_default();
        ensure(top.is_one(), || format!("{}: top level has dimension {top}", d.name))?;
    }

    let sum_where = |pred: &dyn Fn(&Recipe) -> bool| {
        chars.iter().filter(|(d, _)| pred(&d.recipe)).fold(QSeries::zero(t), |acc, (_, c)| acc.add(c))
    };
    let charge = DEN / 20;
    let untwisted = |a: (i64, i64), b: (i64, i64)| -> Result<QSeries, String> {
        Ok(xi_series(1, 1, 1, t)?
            .mul(&xi_series(2, a.0, a.1, t)?)
            .add(&xi_series(1, 2, 1, t)?.mul(&xi_series(2, b.0, b.1, t)?))
            .shift(charge)
            .truncate(t))
    };
    let parents = [
        ("M", sum_where(&|r| matches!(r, Recipe::Vacuum { .. })), untwisted((1, 1), (3, 1))?),
        ("W", sum_where(&|r| matches!(r, Recipe::WSector { .. })), untwisted((3, 2), (3, 3))?),
        (
            "M_T(tau)",
            sum_where(&|r| matches!(r, Recipe::TwistedM { tau_power: 1, .. })),
            mt.shift(charge).truncate(t),
        ),
        (
            "W_T(tau)",
            sum_where(&|r| matches!(r, Recipe::TwistedW { tau_power: 1, .. })),
            wt.shift(charge).truncate(t),
        ),
    ];
    for (name, sum, parent) in parents {
        ensure(sum == parent, || format!("eigenspace characters of {name} do not reassemble it"))?;
    }
    Ok("determinant identity, both eta-quotient decompositions, integrality, top weights and eigenspace sums hold to q^20".into())
}

fn modular_numeric() -> Outcome {
    let t = q_units(60);
    let tol = 1e-6;
    let mut worst: f64 = 0.0;
    for z in [Complex64::new(0.0, 1.0), Complex64::new(0.0, 2.0)] {
        let mut reports = vec![eta_modular_check(z, t, tol).map_err(|e| e.to_string())?];
        for m in 1..=3 {
            reports.push(numeric_modular_check(m, z, t, tol).map_err(|e| e.to_string())?);
        }
        for r in reports {
            ensure(r.passed, || format!("{} at z = {}i: deviation {:e}", r.check, z.im, r.max_deviation))?;
            worst = worst.max(r.max_deviation);
        }
    }
    Ok(format!("eta and minimal-model S-transformations (m = 1, 2, 3) at z = i, 2i; max deviation {worst:.1e}"))
}
