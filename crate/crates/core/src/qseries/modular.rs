//! Floating-point checks of modular transformation laws; the only place
//! where series are evaluated numerically.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::characters::{residue_extract, twisted_base_chars, xi, EtaScale, VirasoroLabel};
use super::{eta, QSeries, DEN};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModularReport {
    pub check: String,
    pub z: [f64; 2],
    pub truncation_q_units: f64,
    pub max_deviation: f64,
    pub tail_estimate: f64,
    pub tol: f64,
    pub passed: bool,
}

/// A series evaluated below its truncation, with an estimate of what was dropped.
struct Evaluated {
    value: Complex64,
    tail: f64,
}

/// `series` must extend one whole power of `q` past `trunc`; the extra band estimates the tail.
fn evaluate(series: &QSeries, trunc: i64, z: Complex64) -> Evaluated {
    let head = series.truncate(trunc);
    let abs_q = (-2.0 * PI * z.im).exp();
    // The band past `trunc` may happen to be empty (sparse products), so
    // never report less than a unit coefficient at the cutoff.
    let band: f64 = series
        .terms()
        .filter(|(k, _)| *k >= trunc)
        .map(|(k, c)| c.to_f64().abs() * abs_q.powf(k as f64 / DEN as f64))
        .sum();
    let tail = band.max(abs_q.powf(trunc as f64 / DEN as f64));
    Evaluated { value: head.eval(z), tail }
}

fn check_point(z: Complex64) -> Result<()> {
    if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NotInUpperHalfPlane)
    }
}

fn finish(check: String, z: Complex64, trunc: i64, dev: f64, tail: f64, tol: f64) -> Result<ModularReport> {
    if tail > tol {
        return Err(Error::TailTooLarge { tail, tol });
    }
    Ok(ModularReport {
        check,
        z: [z.re, z.im],
        truncation_q_units: trunc as f64 / DEN as f64,
        max_deviation: dev,
        tail_estimate: tail,
        tol,
        passed: dev <= tol,
    })
}

/// Check `Ξ_{r,s}(−1/z) = √(8/(pp′)) Σ_{j≤i} (−1)^{(r+s)(i+j)} sin(πri/p) sin(πsj/p′) Ξ_{i,j}(z)`
/// for every label of the `m`-th minimal model.
pub fn numeric_modular_check(m: i64, z: Complex64, trunc: i64, tol: f64) -> Result<ModularReport> {
    check_point(z)?;
    VirasoroLabel::new(m, 1, 1)?;
    let zs = -z.inv();
    let labels = VirasoroLabel::all(m);
    let mut tail: f64 = 0.0;
    let mut at_z = Vec::new();
    let mut at_s = Vec::new();
    for &l in &labels {
        let s = xi(l, trunc + DEN)?;
        let (a, b) = (evaluate(&s, trunc, z), evaluate(&s, trunc, zs));
        tail = tail.max(a.tail).max(b.tail);
        at_z.push(a.value);
        at_s.push(b.value);
    }
    let (p, pp) = ((m + 2) as f64, (m + 3) as f64);
    let norm = (8.0 / (p * pp)).sqrt();
    let mut dev: f64 = 0.0;
    for (lhs, l) in at_s.iter().zip(&labels) {
        let rhs: Complex64 = labels
            .iter()
            .zip(&at_z)
            .map(|(t, v)| {
                let sign = if ((l.r + l.s) * (t.r + t.s)) % 2 == 0 { 1.0 } else { -1.0 };
                let w = sign
                    * (PI * (l.r * t.r) as f64 / p).sin()
                    * (PI * (l.s * t.s) as f64 / pp).sin();
                v * w
            })
            .sum::<Complex64>()
            * norm;
        dev = dev.max((lhs - rhs).norm());
    }
    finish(format!("xi-s-transform-m{m}"), z, trunc, dev, tail, tol)
}

/// Check `η(−1/z) = √(−iz) η(z)` on the principal branch.
pub fn eta_modular_check(z: Complex64, trunc: i64, tol: f64) -> Result<ModularReport> {
    check_point(z)?;
    let s = eta(EtaScale::One, trunc + DEN);
    let (a, b) = (evaluate(&s, trunc, z), evaluate(&s, trunc, -z.inv()));
    let factor = (Complex64::new(0.0, -1.0) * z).sqrt();
    let dev = (b.value - factor * a.value).norm();
    finish("eta-s-transform".into(), z, trunc, dev, a.tail.max(b.tail), tol)
}

/// Largest gap between residue-class extraction and the cube-root-of-unity
/// projector applied to `T(z), T(z+1), T(z+2)` for both twisted sectors.
pub fn twisted_projection_check(z: Complex64, trunc: i64) -> f64 {
    let (mt, wt) = twisted_base_chars(trunc);
    let xi3 = |k: i64| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0);
    let charge = DEN / 20;
    // (series, base class, phase per unit shift in units of π/90, row exponents)
    let sectors = [
        (&mt, DEN / 9, -11.0, [0i64, 1, 2]),
        (&wt, 2 * DEN / 45, 1.0, [0i64, 2, 1]),
    ];
    let mut dev: f64 = 0.0;
    for (series, base, phase, rows) in sectors {
        let shifted: Vec<Complex64> = (0..3)
            .map(|k| {
                let ph = Complex64::from_polar(1.0, phase * PI * k as f64 / 90.0);
                ph * series.eval(z + Complex64::new(k as f64, 0.0))
            })
            .collect();
        for (eps, row) in rows.iter().enumerate() {
            let projected: Complex64 =
                (0..3).map(|k| xi3(row * k) * shifted[k as usize]).sum::<Complex64>() / 3.0;
            let step = if base == DEN / 9 { 2 * DEN / 3 } else { DEN / 3 };
            let class = base + eps as i64 * step - charge;
            let extracted = residue_extract(series, class).eval(z);
            dev = dev.max((projected - extracted).norm());
        }
    }
    dev
}
