//! Projection of the vacuum module onto its Zhu algebra, presented as a
//! quotient of `Q[x, y]` with `x = [ω]` and `y = [J]`.
//!
//! Monomials are reduced by induction on weight:
//!
//! ```text
//! [L(−n)u]   = (−1)ⁿ ((n−1)x + wt u) [u]
//! [J(−n−4)v] = −3[J(−n−3)v] − 3[J(−n−2)v] − [J(−n−1)v]        (n ≥ 0)
//! [J(−3)v]   = y[v] − 2[J(−2)v] − [J(−1)v]
//! ```
//!
//! Every vector on the right has smaller weight than the left-hand side, so
//! the recursion terminates.

mod poly;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

pub use poly::{BiPoly, PowerProduct};

use crate::engine::{Engine, Mode, NormalMonomial, StateVector};
use crate::exactnum::Rat;

/// Memoized Zhu projection over a given engine.
pub struct ZhuMap<'e> {
    engine: &'e Engine,
    memo: RwLock<HashMap<NormalMonomial, Arc<BiPoly>>>,
}

impl<'e> ZhuMap<'e> {
    pub fn new(engine: &'e Engine) -> Self {
        ZhuMap { engine, memo: RwLock::default() }
    }

    pub fn engine(&self) -> &'e Engine {
        self.engine
    }

    pub fn image(&self, v: &StateVector) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in v.terms() {
            out.add_multiple(&self.image_monomial(m), c, PowerProduct::ONE);
        }
        out
    }

    pub fn image_monomial(&self, m: &NormalMonomial) -> Arc<BiPoly> {
        if let Some(hit) = self.memo.read().expect("memo lock poisoned").get(m) {
            return Arc::clone(hit);
        }
        let value = Arc::new(self.reduce(m));
        let mut memo = self.memo.write().expect("memo lock poisoned");
        Arc::clone(memo.entry(m.clone()).or_insert(value))
    }

    fn image_of_mode(&self, op: Mode, v: &NormalMonomial) -> BiPoly {
        self.image(&self.engine.apply_monomial(op, v))
    }

    fn reduce(&self, m: &NormalMonomial) -> BiPoly {
        if m.is_vacuum() {
            return BiPoly::one();
        }
        let u = m.tail();
        if let Some(&n) = m.m_parts().first() {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let mut factor = BiPoly::term(PowerProduct::new(1, 0), Rat::int(sign * (i64::from(n) - 1)));
            factor.add_term(PowerProduct::ONE, Rat::int(sign * i64::from(u.weight())));
            return &factor * &self.image_monomial(&u);
        }
        let n = i64::from(m.n_parts()[0]);
        let mut out = BiPoly::zero();
        if n >= 4 {
            for (k, c) in [(n - 1, -3), (n - 2, -3), (n - 3, -1)] {
                out.add_multiple(&self.image_of_mode(Mode::j(-k), &u), &Rat::int(c), PowerProduct::ONE);
            }
        } else {
            out.add_multiple(&self.image_monomial(&u), &Rat::one(), PowerProduct::new(0, 1));
            out.add_multiple(&self.image_of_mode(Mode::j(-2), &u), &Rat::int(-2), PowerProduct::ONE);
            out.add_multiple(&self.image_of_mode(Mode::j(-1), &u), &Rat::int(-1), PowerProduct::ONE);
        }
        out
    }
}

/// The shared memoized map over [`Engine::global`].
pub fn global_zhu_map() -> &'static ZhuMap<'static> {
    static MAP: OnceLock<ZhuMap<'static>> = OnceLock::new();
    MAP.get_or_init(|| ZhuMap::new(Engine::global()))
}

/// Image of `v` in the Zhu algebra, using the shared engine and memo.
pub fn zhu_image(v: &StateVector) -> BiPoly {
    global_zhu_map().image(v)
}

/// Image of `v` in `W/C₂(W)`: only `L(−2)^p J(−3)^q 𝟙` survive, as `x^p y^q`.
pub fn c2_image(v: &StateVector) -> BiPoly {
    let mut out = BiPoly::zero();
    for (m, c) in v.terms().filter(|(m, _)| m.is_pure_power()) {
        let p = PowerProduct::new(m.m_parts().len() as u32, m.n_parts().len() as u32);
        out.add_term(p, c.clone());
    }
    out
}

/// Outcome of checking the Zhu-algebra identities on a basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct IdentityReport {
    pub monomials: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

/// Check, for every basis monomial `u` of weight at most `max_weight`:
///
/// * `[(L(−2) + L(−1))u] = x[u]`
/// * `[(J(−3) + 3J(−2) + 3J(−1) + J(0))u] = y[u]`
/// * `[(J(−4) + 3J(−3) + 3J(−2) + J(−1))u] = 0` and `[(L(−3) + 2L(−2) + L(−1))u] = 0`
/// * `[L(−n)u] = (−1)ⁿ((n−1)x + wt u)[u]` for `1 ≤ n ≤ 6`, with `L(−n)u` rewritten by the engine
pub fn check_identities(map: &ZhuMap<'_>, max_weight: u32) -> IdentityReport {
    let e = map.engine();
    let mut report = IdentityReport::default();
    let combo = |u: &StateVector, ops: &[(Mode, i64)]| {
        let mut v = StateVector::zero();
        for &(op, c) in ops {
            v.add_scaled(&e.apply_mode(op, u), &Rat::int(c));
        }
        map.image(&v)
    };
    for h in 0..=max_weight {
        for m in crate::engine::enumerate_basis(h) {
            report.monomials += 1;
            let u = StateVector::monomial(m.clone());
            let img = map.image(&u);
            let mut expect = |name: &str, got: BiPoly, want: BiPoly| {
                report.checks += 1;
                if got != want {
                    report.failures.push(format!("{name} at {m}: got {got}, expected {want}"));
                }
            };
            let x_img = img.shifted(PowerProduct::new(1, 0));
            let y_img = img.shifted(PowerProduct::new(0, 1));
            expect("virp", combo(&u, &[(Mode::l(-2), 1), (Mode::l(-1), 1)]), x_img);
            expect(
                "prd1",
                combo(&u, &[(Mode::j(-3), 1), (Mode::j(-2), 3), (Mode::j(-1), 3), (Mode::j(0), 1)]),
                y_img,
            );
            expect(
                "prd2-J",
                combo(&u, &[(Mode::j(-4), 1), (Mode::j(-3), 3), (Mode::j(-2), 3), (Mode::j(-1), 1)]),
                BiPoly::zero(),
            );
            expect(
                "prd2-L",
                combo(&u, &[(Mode::l(-3), 1), (Mode::l(-2), 2), (Mode::l(-1), 1)]),
                BiPoly::zero(),
            );
            for n in 1..=6i64 {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let mut factor = BiPoly::term(PowerProduct::new(1, 0), Rat::int(sign * (n - 1)));
                factor.add_term(PowerProduct::ONE, Rat::int(sign * i64::from(h)));
                expect("virn", combo(&u, &[(Mode::l(-n), 1)]), &factor * &img);
            }
        }
    }
    report
}
