//! Vacuum module of the W₃ algebra at central charge 6/5.
//!
//! The module is presented by the mode commutators
//!
//! ```text
//! [L(m), L(n)] = (m−n) L(m+n) + (m³−m)/10 · δ(m+n, 0)
//! [L(m), J(n)] = (2m−n) J(m+n)
//! [J(m), J(n)] = (m−n)(22(m+n+2)(m+n+3) + 35(m+2)(n+2)) L(m+n)
//!               − 120 (m−n) Λ(m+n) − (7/10) m(m²−1)(m²−4) δ(m+n, 0)
//! ```
//!
//! with `Λ(N) = Σ_{k≤−2} L(k)L(N−k) + Σ_{k≥−1} L(N−k)L(k)`, together with
//! `L(n)𝟙 = 0` for `n ≥ −1` and `J(n)𝟙 = 0` for `n ≥ −2`. Every vector is
//! kept in the normal-form basis `L(−m₁)…L(−m_p)J(−n₁)…J(−n_q)𝟙`.

mod monomial;
pub mod parse;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

pub use monomial::{
    enumerate_basis, partitions_min_part, Generator, Mode, NormalMonomial, StateVector,
    VectorWeight,
};

use crate::exactnum::Rat;

/// Structure constants of the presentation.
pub struct AlgebraConstants;

impl AlgebraConstants {
    pub fn central_charge() -> Rat {
        Rat::frac(6, 5)
    }

    /// Coefficient of `L(m+n)` in `[J(m), J(n)]`, without the `(m−n)` factor.
    pub fn jj_linear(m: i64, n: i64) -> Rat {
        Rat::int(22 * (m + n + 2) * (m + n + 3) + 35 * (m + 2) * (n + 2))
    }

    /// Coefficient of `Λ(m+n)` in `[J(m), J(n)]`, without the `(m−n)` factor.
    pub fn jj_bilinear_coeff() -> Rat {
        Rat::int(-120)
    }

    pub fn jj_central_coeff() -> Rat {
        Rat::frac(-7, 10)
    }

    /// Central term of `[L(m), L(−m)]`: `c (m³−m)/12`.
    pub fn ll_central(m: i64) -> Rat {
        Rat::int(m * m * m - m) * Rat::frac(1, 12) * Self::central_charge()
    }

    /// Central term of `[J(m), J(−m)]`.
    pub fn jj_central(m: i64) -> Rat {
        Rat::int(m * (m * m - 1) * (m * m - 4)) * Self::jj_central_coeff()
    }
}

/// `λ(m) = i(i+1)` for `m = 2i+1` and `i²` for `m = 2i`.
pub fn lambda_shift(m: i64) -> i64 {
    if m.rem_euclid(2) == 1 {
        let i = (m - 1).div_euclid(2);
        i * (i + 1)
    } else {
        let i = m.div_euclid(2);
        i * i
    }
}

type MemoKey = (Mode, NormalMonomial);

/// Normal-form reduction engine with a shared memo table.
///
/// Results are pure functions of `(mode, monomial)`; concurrent callers may
/// compute the same entry twice but always insert identical values.
#[derive(Default)]
pub struct Engine {
    memo: RwLock<HashMap<MemoKey, Arc<StateVector>>>,
}

impl Engine {
    pub fn new() -> Self {
        Engine::default()
    }

    /// Process-wide engine shared by the higher-level modules.
    pub fn global() -> &'static Engine {
        static ENGINE: OnceLock<Engine> = OnceLock::new();
        ENGINE.get_or_init(Engine::new)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock poisoned").len()
    }

    /// Normal form of `op · v`.
    pub fn apply_mode(&self, op: Mode, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.apply_monomial(op, m), c);
        }
        out
    }

    /// Apply `ops[0] ops[1] … ops[k−1]` to `v` (rightmost first).
    pub fn apply_word(&self, ops: &[Mode], v: &StateVector) -> StateVector {
        ops.iter()
            .rev()
            .fold(v.clone(), |acc, &op| self.apply_mode(op, &acc))
    }

    pub fn apply_monomial(&self, op: Mode, m: &NormalMonomial) -> Arc<StateVector> {
        let key = (op, m.clone());
        if let Some(hit) = self.memo.read().expect("memo lock poisoned").get(&key) {
            return Arc::clone(hit);
        }
        let value = Arc::new(self.reduce(op, m));
        let mut memo = self.memo.write().expect("memo lock poisoned");
        Arc::clone(memo.entry(key).or_insert(value))
    }

    /// `Λ(N) v`, with both sums truncated to the terms that can act nontrivially.
    pub fn apply_lambda(&self, n: i64, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.lambda_monomial(n, m), c);
        }
        out
    }

    fn lambda_monomial(&self, n: i64, m: &NormalMonomial) -> StateVector {
        let w = i64::from(m.weight());
        let base = StateVector::monomial(m.clone());
        let mut out = StateVector::zero();
        // L(j) kills a weight-w vector once j > w
        for k in (n - w)..=-2 {
            let inner = self.apply_monomial(Mode::l(n - k), m);
            out.add_scaled(&self.apply_mode(Mode::l(k), &inner), &Rat::one());
        }
        for k in -1..=w {
            let inner = self.apply_mode(Mode::l(k), &base);
            out.add_scaled(&self.apply_mode(Mode::l(n - k), &inner), &Rat::one());
        }
        out
    }

    /// `Σ_k :L(k)L(N−k): v`, the normally ordered bilinear sum.
    pub fn apply_normal_ordered_sum(&self, n: i64, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (m, c) in v.terms() {
            let w = i64::from(m.weight());
            let base = StateVector::monomial(m.clone());
            for k in (n - w)..=w {
                let (left, right) = if k <= n - k { (k, n - k) } else { (n - k, k) };
                let inner = self.apply_mode(Mode::l(right), &base);
                out.add_scaled(&self.apply_mode(Mode::l(left), &inner), c);
            }
        }
        out
    }

    fn apply_vec_to(&self, op: Mode, v: &StateVector, coeff: &Rat, out: &mut StateVector) {
        if coeff.is_zero() {
            return;
        }
        for (m, c) in v.terms() {
            out.add_scaled(&self.apply_monomial(op, m), &(c * coeff));
        }
    }

    /// One rewriting step: commute `op` past the leftmost generator of `m`.
    fn reduce(&self, op: Mode, m: &NormalMonomial) -> StateVector {
        let k = op.index;
        match op.generator {
            Generator::L => {
                if let Some(&m1) = m.m_parts().first() {
                    let m1 = i64::from(m1);
                    if -k >= m1 {
                        return StateVector::monomial(m.prepend_l((-k) as u32));
                    }
                    // L(k)L(−m₁)R = L(−m₁)L(k)R + (k+m₁)L(k−m₁)R + central
                    let rest = m.tail();
                    let mut out = StateVector::zero();
                    let inner = self.apply_monomial(op, &rest);
                    self.apply_vec_to(Mode::l(-m1), &inner, &Rat::one(), &mut out);
                    out.add_scaled(&self.apply_monomial(Mode::l(k - m1), &rest), &Rat::int(k + m1));
                    if k == m1 {
                        out.add_term(rest, AlgebraConstants::ll_central(k));
                    }
                    out
                } else if let Some(&n1) = m.n_parts().first() {
                    if k <= -2 {
                        return StateVector::monomial(m.prepend_l((-k) as u32));
                    }
                    // L(k)J(−n₁)R = J(−n₁)L(k)R + (2k+n₁)J(k−n₁)R
                    let n1 = i64::from(n1);
                    let rest = m.tail();
                    let mut out = StateVector::zero();
                    let inner = self.apply_monomial(op, &rest);
                    self.apply_vec_to(Mode::j(-n1), &inner, &Rat::one(), &mut out);
                    out.add_scaled(&self.apply_monomial(Mode::j(k - n1), &rest), &Rat::int(2 * k + n1));
                    out
                } else if k <= -2 {
                    StateVector::monomial(m.prepend_l((-k) as u32))
                } else {
                    StateVector::zero()
                }
            }
            Generator::J => {
                if let Some(&m1) = m.m_parts().first() {
                    // J(k)L(−m₁)R = L(−m₁)J(k)R + (2m₁+k)J(k−m₁)R
                    let m1 = i64::from(m1);
                    let rest = m.tail();
                    let mut out = StateVector::zero();
                    let inner = self.apply_monomial(op, &rest);
                    self.apply_vec_to(Mode::l(-m1), &inner, &Rat::one(), &mut out);
                    out.add_scaled(&self.apply_monomial(Mode::j(k - m1), &rest), &Rat::int(2 * m1 + k));
                    out
                } else if let Some(&n1) = m.n_parts().first() {
                    let n1 = i64::from(n1);
                    if -k >= n1 {
                        return StateVector::monomial(m.prepend_j((-k) as u32));
                    }
                    // J(k)J(−n₁)R = J(−n₁)J(k)R + [J(k), J(−n₁)]R
                    let rest = m.tail();
                    let mut out = StateVector::zero();
                    let inner = self.apply_monomial(op, &rest);
                    self.apply_vec_to(Mode::j(-n1), &inner, &Rat::one(), &mut out);
                    self.jj_commutator(k, -n1, &rest, &mut out);
                    out
                } else if k <= -3 {
                    StateVector::monomial(m.prepend_j((-k) as u32))
                } else {
                    StateVector::zero()
                }
            }
        }
    }

    /// `out += [J(a), J(b)] r`
    fn jj_commutator(&self, a: i64, b: i64, r: &NormalMonomial, out: &mut StateVector) {
        let n = a + b;
        let diff = Rat::int(a - b);
        let lin = &diff * &AlgebraConstants::jj_linear(a, b);
        out.add_scaled(&self.apply_monomial(Mode::l(n), r), &lin);
        let bil = &diff * &AlgebraConstants::jj_bilinear_coeff();
        out.add_scaled(&self.lambda_monomial(n, r), &bil);
        if n == 0 {
            out.add_term(r.clone(), AlgebraConstants::jj_central(a));
        }
    }

    /// Expansion of the right-hand side of the defining commutator `[G(m), H(n)]`
    /// applied to `v`, built from single-mode applications and `Λ`.
    pub fn commutator_rhs(&self, g: Mode, h: Mode, v: &StateVector) -> StateVector {
        let (a, b) = (g.index, h.index);
        let mut out = StateVector::zero();
        match (g.generator, h.generator) {
            (Generator::L, Generator::L) => {
                out.add_scaled(&self.apply_mode(Mode::l(a + b), v), &Rat::int(a - b));
                if a + b == 0 {
                    out.add_scaled(v, &AlgebraConstants::ll_central(a));
                }
            }
            (Generator::L, Generator::J) => {
                out.add_scaled(&self.apply_mode(Mode::j(a + b), v), &Rat::int(2 * a - b));
            }
            (Generator::J, Generator::L) => {
                out.add_scaled(&self.apply_mode(Mode::j(a + b), v), &Rat::int(a - 2 * b));
            }
            (Generator::J, Generator::J) => {
                for (m, c) in v.terms() {
                    let mut piece = StateVector::zero();
                    self.jj_commutator(a, b, m, &mut piece);
                    out.add_scaled(&piece, c);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(m: &[u32], n: &[u32]) -> NormalMonomial {
        NormalMonomial::new(m.to_vec(), n.to_vec()).unwrap()
    }

    fn sv(m: &[u32], n: &[u32], c: Rat) -> StateVector {
        StateVector::term(mono(m, n), c)
    }

    #[test]
    fn jj_products_on_vacuum() {
        let e = Engine::new();
        let j = StateVector::monomial(mono(&[], &[3]));
        assert_eq!(e.apply_mode(Mode::j(3), &j), sv(&[], &[], Rat::int(-84)));
        assert!(e.apply_mode(Mode::j(2), &j).is_zero());
        assert_eq!(e.apply_mode(Mode::j(1), &j), sv(&[2], &[], Rat::int(-420)));
        assert_eq!(e.apply_mode(Mode::j(0), &j), sv(&[3], &[], Rat::int(-210)));
        let mut expected = sv(&[4], &[], Rat::int(18));
        expected.add_term(mono(&[2, 2], &[]), Rat::int(-240));
        assert_eq!(e.apply_mode(Mode::j(-1), &j), expected);
    }

    #[test]
    fn virasoro_central_term() {
        let e = Engine::new();
        let w = StateVector::monomial(mono(&[2], &[]));
        assert_eq!(e.apply_mode(Mode::l(2), &w), sv(&[], &[], Rat::frac(3, 5)));
        assert!(e.apply_mode(Mode::l(1), &w).is_zero());
        assert_eq!(e.apply_mode(Mode::l(0), &w), sv(&[2], &[], Rat::int(2)));
        assert_eq!(e.apply_mode(Mode::l(-1), &w), sv(&[3], &[], Rat::int(1)));
    }

    #[test]
    fn vacuum_annihilation() {
        let e = Engine::new();
        let vac = StateVector::vacuum();
        for n in -1..6 {
            assert!(e.apply_mode(Mode::l(n), &vac).is_zero());
        }
        for n in -2..6 {
            assert!(e.apply_mode(Mode::j(n), &vac).is_zero());
        }
        assert_eq!(e.apply_mode(Mode::l(-2), &vac), StateVector::monomial(mono(&[2], &[])));
        assert_eq!(e.apply_mode(Mode::j(-3), &vac), StateVector::monomial(mono(&[], &[3])));
    }

    #[test]
    fn j_is_primary_of_weight_three() {
        let e = Engine::new();
        let j = StateVector::monomial(mono(&[], &[3]));
        assert_eq!(e.apply_mode(Mode::l(0), &j), j.scaled(&Rat::int(3)));
        for n in 1..5 {
            assert!(e.apply_mode(Mode::l(n), &j).is_zero());
        }
    }

    #[test]
    fn lambda_examples() {
        let e = Engine::new();
        let vac = StateVector::vacuum();
        assert!(e.apply_lambda(0, &vac).is_zero());
        assert_eq!(e.apply_lambda(-4, &vac), StateVector::monomial(mono(&[2, 2], &[])));
    }

    #[test]
    fn lambda_shift_values() {
        assert_eq!(
            (-3..=5).map(lambda_shift).collect::<Vec<_>>(),
            vec![2, 1, 0, 0, 0, 1, 2, 4, 6]
        );
    }

    #[test]
    fn word_application() {
        let e = Engine::new();
        // L(−1)L(−2)𝟙 = L(−3)𝟙
        let v = e.apply_word(&[Mode::l(-1), Mode::l(-2)], &StateVector::vacuum());
        assert_eq!(v, StateVector::monomial(mono(&[3], &[])));
    }
}
