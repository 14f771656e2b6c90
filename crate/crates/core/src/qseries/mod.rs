//! Truncated q-series with rational exponents on a fixed lattice `(1/720)·Z`.
//!
//! A series carries a truncation bound `T` (in lattice units): coefficients
//! of `q^e` with `e < T/720` are exact, nothing at or beyond it is stored.

mod characters;
mod modular;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::Rat;

pub use characters::{
    all_module_characters, central_charge, conformal_weight, eta, generic_char_c65, module_character,
    module_descriptor, module_descriptors, residue_extract, s_tau_char, twisted_base_chars,
    virasoro_min_char, xi, EtaScale, ModuleDescriptor, Recipe, VirasoroLabel,
};
pub use modular::{eta_modular_check, numeric_modular_check, twisted_projection_check, ModularReport};

/// Exponent denominator: every exponent is an integer multiple of `1/DEN`.
pub const DEN: i64 = 720;

/// Default truncation in whole powers of `q`.
pub const DEFAULT_TRUNCATION_Q_UNITS: i64 = 24;

/// `n` whole powers of `q` in lattice units.
pub fn q_units(n: i64) -> i64 {
    n * DEN
}

/// Default truncation in lattice units, overridable by `W3_TRUNCATION` (whole powers of `q`).
pub fn default_truncation() -> i64 {
    let units = std::env::var("W3_TRUNCATION")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_TRUNCATION_Q_UNITS);
    q_units(units)
}

/// Lattice coordinate of a rational exponent.
pub fn lattice_exponent(e: &Rat) -> Result<i64> {
    let scaled = e * &Rat::int(DEN);
    scaled
        .is_integer()
        .then(|| scaled.to_i64())
        .flatten()
        .ok_or_else(|| Error::OffLattice(e.to_string()))
}

pub fn exponent_rat(k: i64) -> Rat {
    Rat::frac(k, DEN)
}

/// Parse a complex number written as `a`, `bi`, `a+bi` or `a-bi` (`i` alone means `1i`).
pub fn parse_complex(src: &str) -> Result<Complex64> {
    let err = || Error::ParseComplex(src.to_string());
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.len() > 64 {
        return Err(err());
    }
    let real = |t: &str| -> Result<f64> {
        let plain = !t.is_empty()
            && t.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '+' | '-' | 'e' | 'E'));
        plain.then(|| t.parse::<f64>().ok()).flatten().filter(|v| v.is_finite()).ok_or_else(err)
    };
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => real(t),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s)?, 0.0));
    };
    // The imaginary part starts at the last sign that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<i64, Rat>,
    trunc: i64,
}

impl QSeries {
    pub fn zero(trunc: i64) -> Self {
        QSeries { terms: BTreeMap::new(), trunc }
    }

    pub fn one(trunc: i64) -> Self {
        QSeries::monomial(0, Rat::one(), trunc)
    }

    /// `c·q^(k/DEN)`, dropped if at or beyond the truncation.
    pub fn monomial(k: i64, c: Rat, trunc: i64) -> Self {
        let mut s = QSeries::zero(trunc);
        s.add_term(k, c);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rat)>, trunc: i64) -> Self {
        let mut s = QSeries::zero(trunc);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(lattice exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, k: i64) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    /// Lowest exponent present; for the zero series this is the truncation bound.
    pub fn valuation(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(self.trunc)
    }

    pub fn leading(&self) -> Option<(i64, &Rat)> {
        self.terms.iter().next().map(|(k, c)| (*k, c))
    }

    fn add_term(&mut self, k: i64, c: Rat) {
        if k >= self.trunc || c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Lower the truncation bound; raising it is not allowed.
    pub fn truncate(&self, trunc: i64) -> QSeries {
        assert!(trunc <= self.trunc, "cannot raise truncation {} to {trunc}", self.trunc);
        QSeries { terms: self.terms.range(..trunc).map(|(k, c)| (*k, c.clone())).collect(), trunc }
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        QSeries::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)), self.trunc)
    }

    /// Multiply by `q^(k/DEN)`.
    pub fn shift(&self, k: i64) -> QSeries {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            trunc: self.trunc + k,
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncate(trunc);
        for (k, c) in other.terms.range(..trunc) {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.scale(&Rat::int(-1)))
    }

    /// Product; the truncation becomes `min(T₁ + ℓ₂, T₂ + ℓ₁)`.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let trunc = (self.trunc + other.valuation()).min(other.trunc + self.valuation());
        let mut out = QSeries::zero(trunc);
        for (a, x) in &self.terms {
            for (b, y) in other.terms.range(..trunc - a) {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// Multiplicative inverse; the truncation becomes `T − 2ℓ`.
    pub fn inverse(&self) -> Result<QSeries> {
        let (lead, a0) = self.leading().ok_or(Error::ZeroLeadingCoefficient)?;
        let inv0 = a0.recip()?;
        let trunc = self.trunc - 2 * lead;
        let stride = self.terms.keys().fold(0i64, |g, k| g.gcd(&(k - lead)));
        if stride == 0 {
            return Ok(QSeries::monomial(-lead, inv0, trunc));
        }
        let n = ((trunc + lead) + stride - 1) / stride;
        let n = usize::try_from(n).unwrap_or(0);
        let a: Vec<(usize, &Rat)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(k, c)| (((k - lead) / stride) as usize, c))
            .take_while(|(i, _)| *i < n)
            .collect();
        let mut b: Vec<Rat> = Vec::with_capacity(n);
        for i in 0..n {
            if i == 0 {
                b.push(inv0.clone());
                continue;
            }
            let s: Rat = a
                .iter()
                .take_while(|(j, _)| *j <= i)
                .filter(|(j, _)| !b[i - j].is_zero())
                .map(|(j, c)| *c * &b[i - j])
                .sum();
            b.push(-(s * &inv0));
        }
        Ok(QSeries::from_terms(
            b.into_iter().enumerate().map(|(i, c)| (-lead + i as i64 * stride, c)),
            trunc,
        ))
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Sum `Σ c·q^e` at `q = exp(2πi z)`, with `q^e = exp(2πi e z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let two_pi_i_z = Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z;
        self.terms
            .iter()
            .map(|(k, c)| (two_pi_i_z * (*k as f64 / DEN as f64)).exp() * c.to_f64())
            .sum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "truncation": exponent_rat(self.trunc).to_string(),
            "terms": self.terms.iter().map(|(k, c)| serde_json::json!({
                "exponent": exponent_rat(*k).to_string(),
                "coef": c.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let abs = c.abs();
            let coef = match (abs.is_one(), abs.is_integer()) {
                (true, _) => String::new(),
                (false, true) => format!("{abs}*"),
                (false, false) => format!("({abs})*"),
            };
            let e = exponent_rat(*k);
            let power = match (e.is_zero(), e.is_one()) {
                (true, _) if abs.is_one() => "1".to_string(),
                (true, _) => coef.trim_end_matches('*').to_string(),
                (_, true) => format!("{coef}q"),
                _ => format!("{coef}q^({e})"),
            };
            write!(f, "{sep}{power}")?;
        }
        if !self.terms.is_empty() {
            write!(f, " + ")?;
        }
        write!(f, "O(q^({}))", exponent_rat(self.trunc))
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const T: i64 = 12 * DEN;

    fn one_minus_q() -> QSeries {
        QSeries::from_terms([(0, Rat::one()), (DEN, Rat::int(-1))], T)
    }

    #[test]
    fn geometric_inverse() {
        let inv = one_minus_q().inverse().unwrap();
        assert_eq!(inv.len(), 12);
        assert!(inv.terms().all(|(_, c)| c.is_one()));
        let back = one_minus_q().mul(&inv);
        assert_eq!(back, QSeries::one(T));
    }

    #[test]
    fn partition_numbers_from_brute_product() {
        let mut prod = QSeries::one(T);
        for n in 1..12 {
            prod = prod.mul(&QSeries::from_terms([(0, Rat::one()), (n * DEN, Rat::int(-1))], T));
        }
        let p = prod.inverse().unwrap();
        let coefs: Vec<i64> = (0..12).map(|n| p.coefficient(n * DEN).to_i64().unwrap()).collect();
        assert_eq!(coefs, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56]);
    }

    #[test]
    fn fractional_shifts() {
        let a = QSeries::monomial(80, Rat::one(), T);
        let b = QSeries::monomial(240, Rat::one(), T);
        let p = a.mul(&b);
        assert_eq!(p.leading(), Some((320, &Rat::one())));
        assert_eq!(exponent_rat(320), Rat::frac(4, 9));
        assert_eq!(lattice_exponent(&Rat::frac(1, 9)).unwrap(), 80);
        assert!(lattice_exponent(&Rat::frac(1, 7)).is_err());
    }

    #[test]
    fn zero_leading_coefficient() {
        assert_eq!(QSeries::zero(T).inverse(), Err(Error::ZeroLeadingCoefficient));
    }

    #[test]
    fn complex_arguments() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.5 + 2i").unwrap(), c(0.5, 2.0));
        assert_eq!(parse_complex("1e-1-3i").unwrap(), c(0.1, -3.0));
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        for bad in ["", "i2", "1+", "+i+i", "abc", "1..2i", "nan", "inf i", "+"] {
            assert!(parse_complex(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn display() {
        let s = QSeries::from_terms([(80, Rat::one()), (DEN, Rat::frac(-1, 2))], 2 * DEN);
        assert_eq!(s.to_string(), "q^(1/9) - (1/2)*q + O(q^(2))");
    }

    fn arb_series() -> impl Strategy<Value = QSeries> {
        (proptest::collection::vec((0i64..20, -4i64..5), 1..6), 8i64..30, -5i64..5).prop_map(|(ts, t, lead)| {
            let mut s = QSeries::from_terms(ts.into_iter().map(|(k, c)| (k * 60, Rat::int(c))), t * 60);
            s.add_term(lead * 60, Rat::one());
            s
        })
    }

    proptest! {
        #[test]
        fn truncation_propagation(a in arb_series(), b in arb_series()) {
            let p = a.mul(&b);
            prop_assert_eq!(p.truncation(), (a.truncation() + b.valuation()).min(b.truncation() + a.valuation()));
            prop_assert!(p.terms().all(|(k, _)| k < p.truncation()));
            let s = a.add(&b);
            prop_assert_eq!(s.truncation(), a.truncation().min(b.truncation()));
        }

        #[test]
        fn inverse_roundtrip(a in arb_series()) {
            if let Ok(inv) = a.inverse() {
                let p = a.mul(&inv);
                prop_assert_eq!(p, QSeries::one(a.truncation() - a.valuation()));
            }
        }

        #[test]
        fn multiplication_commutes(a in arb_series(), b in arb_series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }
    }
}
