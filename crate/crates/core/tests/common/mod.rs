//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here calls into the library's own algorithms for the quantity
//! being checked: partitions are counted by recursion, q-series are plain
//! integer maps, minimal-model characters come from theta-function
//! numerators, and ranks use textbook Gaussian elimination.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;
use w3_core::qseries::{QSeries, DEN};
use w3_core::{QuadRat, Rat};

/// Partitions of `n` into parts, each at least `min_part`.
pub fn count_partitions(n: u32, min_part: u32) -> u64 {
    fn go(n: u32, min_part: u32, memo: &mut BTreeMap<(u32, u32), u64>) -> u64 {
        if n == 0 {
            return 1;
        }
        if min_part > n {
            return 0;
        }
        if let Some(&v) = memo.get(&(n, min_part)) {
            return v;
        }
        let v = go(n - min_part, min_part, memo) + go(n, min_part + 1, memo);
        memo.insert((n, min_part), v);
        v
    }
    go(n, min_part, &mut BTreeMap::new())
}

/// Number of pairs (λ, μ) with λ ⊢ a into parts ≥ 2 and μ ⊢ h − a into parts ≥ 3.
pub fn brute_force_basis_size(h: u32) -> u64 {
    (0..=h).map(|a| count_partitions(a, 2) * count_partitions(h - a, 3)).sum()
}

/// Partitions of `n` into parts not divisible by three, by explicit enumeration.
pub fn partitions_avoiding_three(n: u32) -> u64 {
    fn go(n: u32, max_part: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).filter(|p| p % 3 != 0).map(|p| go(n - p, p)).sum()
    }
    go(n, n)
}

/// Truncated series with integer coefficients on the `1/DEN` lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    pub terms: BTreeMap<i64, i128>,
    pub trunc: i64,
}

impl IntSeries {
    pub fn new(trunc: i64) -> Self {
        IntSeries { terms: BTreeMap::new(), trunc }
    }

    pub fn one(trunc: i64) -> Self {
        let mut s = Self::new(trunc);
        s.add_term(0, 1);
        s
    }

    pub fn add_term(&mut self, k: i64, c: i128) {
        if k >= self.trunc || c == 0 {
            return;
        }
        let e = self.terms.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        // a zero series O(q^T) has valuation at least T
        let lo_a = self.terms.keys().next().copied().unwrap_or(self.trunc);
        let lo_b = other.terms.keys().next().copied().unwrap_or(other.trunc);
        let trunc = (self.trunc + lo_b).min(other.trunc + lo_a);
        let mut out = IntSeries::new(trunc);
        for (&i, &a) in &self.terms {
            for (&j, &b) in &other.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    pub fn sub(&self, other: &IntSeries) -> IntSeries {
        let mut out = IntSeries::new(self.trunc.min(other.trunc));
        for (&k, &c) in &self.terms {
            out.add_term(k, c);
        }
        for (&k, &c) in &other.terms {
            out.add_term(k, -c);
        }
        out
    }

    pub fn add(&self, other: &IntSeries) -> IntSeries {
        let mut out = IntSeries::new(self.trunc.min(other.trunc));
        for (&k, &c) in self.terms.iter().chain(&other.terms) {
            out.add_term(k, c);
        }
        out
    }

    pub fn shift(&self, k: i64) -> IntSeries {
        IntSeries { terms: self.terms.iter().map(|(e, c)| (e + k, *c)).collect(), trunc: self.trunc + k }
    }

    pub fn truncate(&self, trunc: i64) -> IntSeries {
        let mut out = IntSeries::new(trunc.min(self.trunc));
        for (&k, &c) in &self.terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn coefficient(&self, k: i64) -> i128 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    /// Converts a library series whose coefficients are all integers.
    pub fn from_qseries(s: &QSeries) -> IntSeries {
        let mut out = IntSeries::new(s.truncation());
        for (k, c) in s.terms() {
            let v = c.to_i64().unwrap_or_else(|| panic!("non-integer coefficient {c} at {k}"));
            out.add_term(k, i128::from(v));
        }
        out
    }
}

/// `∏_{n≥1} (1 − q^{step·n})`, multiplied out factor by factor.
pub fn euler_product_by_expansion(step: i64, trunc: i64) -> IntSeries {
    let mut acc = IntSeries::one(trunc);
    let mut n = 1;
    while step * n < trunc {
        let mut factor = IntSeries::one(trunc);
        factor.add_term(step * n, -1);
        acc = acc.mul(&factor);
        n += 1;
    }
    acc
}

/// `Σ p(n) qⁿ` from recursive partition counts.
pub fn partition_series(trunc: i64) -> IntSeries {
    let mut out = IntSeries::new(trunc);
    let mut n = 0;
    while n * DEN < trunc {
        out.add_term(n * DEN, i128::from(count_partitions(n as u32, 1)));
        n += 1;
    }
    out
}

/// `η(z)/η(z/3) = q^{1/36} Σ_N (partitions of N avoiding multiples of 3) q^{N/3}`.
pub fn eta_over_eta_third(trunc: i64) -> IntSeries {
    let lead = DEN / 36;
    let mut out = IntSeries::new(trunc);
    let mut n = 0;
    while lead + n * DEN / 3 < trunc {
        out.add_term(lead + n * DEN / 3, i128::from(partitions_avoiding_three(n as u32)));
        n += 1;
    }
    out
}

/// `Ξ^{(m)}_{r,s} = q^{−1/24} θ_{r,s} / ∏(1 − qⁿ)`, exact below `trunc`.
pub fn xi_oracle(m: i64, r: i64, s: i64, trunc: i64) -> IntSeries {
    let shift = DEN / 24;
    theta_numerator(m, r, s, trunc + shift).shift(-shift).mul(&partition_series(trunc + DEN)).truncate(trunc)
}

/// `η(z)·Ξ_{r,s}(z) = Σ_k q^{(2pp′k + p′r − ps)²/(4pp′)} − q^{(2pp′k + p′r + ps)²/(4pp′)}`
/// with `p = m+2`, `p′ = m+3`; both sides carry the `q^{−1/24}` shift.
pub fn theta_numerator(m: i64, r: i64, s: i64, trunc: i64) -> IntSeries {
    let (p, pp) = (m + 2, m + 3);
    let unit = DEN / (4 * p * pp);
    let mut out = IntSeries::new(trunc);
    for k in -60..=60 {
        let minus = 2 * p * pp * k + pp * r - p * s;
        let plus = 2 * p * pp * k + pp * r + p * s;
        out.add_term(minus * minus * unit, 1);
        out.add_term(plus * plus * unit, -1);
    }
    out
}

/// `η(z)` evaluated directly from its product, at `q = e^{2πiz}`.
pub fn eta_numeric(z: Complex64) -> Complex64 {
    let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = q;
    for _ in 0..2000 {
        prod *= Complex64::new(1.0, 0.0) - qn;
        qn *= q;
        if qn.norm() < 1e-300 {
            break;
        }
    }
    (Complex64::new(0.0, 2.0 * std::f64::consts::PI / 24.0) * z).exp() * prod
}

/// `Ξ^{(m)}_{r,s}(z)` from its theta-function form.
pub fn xi_numeric(m: i64, r: i64, s: i64, z: Complex64) -> Complex64 {
    let (p, pp) = ((m + 2) as f64, (m + 3) as f64);
    let two_pi_i_z = Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in -40..=40 {
        let k = k as f64;
        let minus = 2.0 * p * pp * k + pp * r as f64 - p * s as f64;
        let plus = 2.0 * p * pp * k + pp * r as f64 + p * s as f64;
        sum += (two_pi_i_z * (minus * minus / (4.0 * p * pp))).exp();
        sum -= (two_pi_i_z * (plus * plus / (4.0 * p * pp))).exp();
    }
    sum / eta_numeric(z)
}

/// Rank of a rational matrix by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pivot);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        let pivot_row: Vec<Rat> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Top-level eigenvalues `(L(0), J(0)/√−3)` of the twenty irreducible modules.
pub type SpectrumRow = (&'static str, (i64, i64), (i64, i64));

pub const SPECTRUM: [SpectrumRow; 20] = [
    ("M(0)", (0, 1), (0, 1)),
    ("M(1)", (2, 1), (-12, 1)),
    ("M(2)", (2, 1), (12, 1)),
    ("W(0)", (8, 5), (0, 1)),
    ("W(1)", (3, 5), (2, 1)),
    ("W(2)", (3, 5), (-2, 1)),
    ("Mk^c", (1, 2), (0, 1)),
    ("Wk^c", (1, 10), (0, 1)),
    ("M_T(tau)(0)", (1, 9), (14, 81)),
    ("M_T(tau)(1)", (7, 9), (-238, 81)),
    ("M_T(tau)(2)", (13, 9), (374, 81)),
    ("W_T(tau)(0)", (2, 45), (-4, 81)),
    ("W_T(tau)(1)", (17, 45), (-22, 81)),
    ("W_T(tau)(2)", (32, 45), (176, 81)),
    ("M_T(tau^2)(0)", (1, 9), (-14, 81)),
    ("M_T(tau^2)(1)", (7, 9), (238, 81)),
    ("M_T(tau^2)(2)", (13, 9), (-374, 81)),
    ("W_T(tau^2)(0)", (2, 45), (4, 81)),
    ("W_T(tau^2)(1)", (17, 45), (22, 81)),
    ("W_T(tau^2)(2)", (32, 45), (-176, 81)),
];

pub fn spectrum_point(i: usize) -> (Rat, QuadRat) {
    let (_, (a, b), (c, d)) = SPECTRUM[i];
    (Rat::frac(a, b), QuadRat::new(Rat::zero(), Rat::frac(c, d)))
}
