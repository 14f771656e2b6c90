use rayon::prelude::*;
use serde::Serialize;

use super::{lattice_exponent, QSeries, DEN};
use crate::error::{Error, Result};
use crate::exactnum::{QuadRat, Rat};
use crate::ideal::builtin_spectrum;

/// Extra precision carried by intermediate factors, enough to absorb every
/// negative leading exponent and eta-quotient inverse used below.
const PAD: i64 = 2 * DEN;

/// Minimal-model label `(m; r, s)` with `1 ≤ s ≤ r ≤ m+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VirasoroLabel {
    pub m: i64,
    pub r: i64,
    pub s: i64,
}

impl VirasoroLabel {
    pub fn new(m: i64, r: i64, s: i64) -> Result<Self> {
        if m >= 1 && 1 <= s && s <= r && r <= m + 1 {
            Ok(VirasoroLabel { m, r, s })
        } else {
            Err(Error::InvalidLabel { m, r, s })
        }
    }

    /// All labels of the `m`-th minimal model, in `(r, s)` lexicographic order.
    pub fn all(m: i64) -> Vec<VirasoroLabel> {
        (1..=m + 1).flat_map(|r| (1..=r).map(move |s| VirasoroLabel { m, r, s })).collect()
    }

    fn p(&self) -> i64 {
        self.m + 2
    }

    fn p_prime(&self) -> i64 {
        self.m + 3
    }

    /// `((n)² − 1) / (4 p p′)` for the integer `n`.
    fn weight_of(&self, n: i64) -> Rat {
        Rat::frac(n * n - 1, 4 * self.p() * self.p_prime())
    }
}

/// `c_m = 1 − 6/((m+2)(m+3))`.
pub fn central_charge(m: i64) -> Rat {
    &Rat::one() - &Rat::frac(6, (m + 2) * (m + 3))
}

/// `h_{r,s} = (((m+3)r − (m+2)s)² − 1) / (4(m+2)(m+3))`.
pub fn conformal_weight(label: VirasoroLabel) -> Rat {
    label.weight_of(label.p_prime() * label.r - label.p() * label.s)
}

/// `∏_{n≥1} (1 − q^{step·n})` up to `trunc`, by the pentagonal number theorem.
fn euler_product(step: i64, trunc: i64) -> QSeries {
    let mut s = QSeries::zero(trunc);
    for j in 0i64.. {
        let lo = step * j * (3 * j - 1) / 2;
        let hi = step * j * (3 * j + 1) / 2;
        if lo >= trunc && hi >= trunc {
            break;
        }
        let sign = if j % 2 == 0 { Rat::one() } else { Rat::int(-1) };
        s = s.add(&QSeries::monomial(lo, sign.clone(), trunc));
        if j > 0 {
            s = s.add(&QSeries::monomial(hi, sign, trunc));
        }
    }
    s
}

fn partitions(trunc: i64) -> QSeries {
    euler_product(DEN, trunc).inverse().expect("leading coefficient is 1")
}

/// Rocha-Caridi character of `L(c_m, h_{r,s})`.
pub fn virasoro_min_char(label: VirasoroLabel, trunc: i64) -> Result<QSeries> {
    let (p, pp) = (label.p(), label.p_prime());
    let period = 2 * p * pp;
    let mut numerator = QSeries::zero(trunc);
    let mut push = |k: i64| -> Result<bool> {
        let b = lattice_exponent(&label.weight_of(period * k + pp * label.r - p * label.s))?;
        let a = lattice_exponent(&label.weight_of(period * k + pp * label.r + p * label.s))?;
        numerator = numerator
            .add(&QSeries::monomial(b, Rat::one(), trunc))
            .add(&QSeries::monomial(a, Rat::int(-1), trunc));
        Ok(a < trunc || b < trunc)
    };
    push(0)?;
    for k in 1i64.. {
        let up = push(k)?;
        let down = push(-k)?;
        if !up && !down {
            break;
        }
    }
    Ok(numerator.mul(&partitions(trunc)).truncate(trunc))
}

/// `Ξ^{(m)}_{r,s} = q^{−c_m/24} ch L(c_m, h_{r,s})`.
pub fn xi(label: VirasoroLabel, trunc: i64) -> Result<QSeries> {
    let shift = lattice_exponent(&(central_charge(label.m) / Rat::int(24)))?;
    Ok(virasoro_min_char(label, trunc + shift)?.shift(-shift))
}

fn xi3(m: i64, r: i64, s: i64, trunc: i64) -> QSeries {
    xi(VirasoroLabel::new(m, r, s).expect("valid label"), trunc).expect("lattice exponents")
}

/// Argument scaling of the Dedekind eta function, `η(k·z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaScale {
    One,
    Three,
    Third,
}

impl EtaScale {
    /// `k` in lattice units per whole power of `q`.
    fn step(self) -> i64 {
        match self {
            EtaScale::One => DEN,
            EtaScale::Three => 3 * DEN,
            EtaScale::Third => DEN / 3,
        }
    }
}

/// `η(k z) = q^{k/24} ∏ (1 − q^{k n})`.
pub fn eta(scale: EtaScale, trunc: i64) -> QSeries {
    let lead = scale.step() / 24;
    euler_product(scale.step(), trunc - lead).shift(lead)
}

fn eta_quotient(num: EtaScale, den: EtaScale, trunc: i64) -> QSeries {
    let q = eta(num, trunc + PAD)
        .div(&eta(den, trunc + PAD))
        .expect("eta has unit leading coefficient");
    q.truncate(trunc)
}

/// `ch S[τ] = q^{1/9} ∏(1 − qⁿ) / ∏(1 − q^{n/3})`.
pub fn s_tau_char(trunc: i64) -> QSeries {
    let lead = DEN / 9;
    euler_product(DEN, trunc - lead)
        .div(&euler_product(DEN / 3, trunc - lead))
        .expect("unit leading coefficient")
        .shift(lead)
}

/// The two twisted-sector series `(T_MT, T_WT)`.
pub fn twisted_base_chars(trunc: i64) -> (QSeries, QSeries) {
    let w = trunc + PAD;
    let eq = eta_quotient(EtaScale::One, EtaScale::Third, w);
    let x = |r, s| xi3(3, r, s, w);
    let mt = x(3, 3).sub(&x(2, 1)).sub(&x(3, 1));
    let wt = x(1, 1).add(&x(4, 1)).sub(&x(4, 3));
    (eq.mul(&mt).truncate(trunc), eq.mul(&wt).truncate(trunc))
}

/// Sub-series of exponents congruent to `class` modulo one whole power of `q`.
pub fn residue_extract(s: &QSeries, class: i64) -> QSeries {
    QSeries::from_terms(
        s.terms().filter(|(k, _)| (k - class).rem_euclid(DEN) == 0).map(|(k, c)| (k, c.clone())),
        s.truncation(),
    )
}

/// Character of `L(6/5, h)` for weights where the Verma module has at most the `L(−1)` singular vector.
pub fn generic_char_c65(h: &Rat, trunc: i64) -> Result<QSeries> {
    let k = lattice_exponent(h)?;
    let p = partitions(trunc);
    if k == 0 {
        let one_minus_q = QSeries::from_terms([(0, Rat::one()), (DEN, Rat::int(-1))], trunc);
        Ok(one_minus_q.mul(&p))
    } else {
        Ok(p.shift(k).truncate(trunc))
    }
}

/// How each irreducible character is assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// Eigenspace `ε` of the vacuum sector.
    Vacuum { eps: u8 },
    /// Eigenspace `ε` of the `W` sector.
    WSector { eps: u8 },
    MkC,
    WkC,
    /// Residue class `ε` of the `τ^power`-twisted `M` sector.
    TwistedM { tau_power: u8, eps: u8 },
    TwistedW { tau_power: u8, eps: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleDescriptor {
    pub name: String,
    pub top_weight: Rat,
    pub j0: QuadRat,
    pub recipe: Recipe,
}

fn recipe_for(name: &str) -> Option<Recipe> {
    let eps_of = |s: &str| s.strip_suffix(')')?.parse::<u8>().ok().filter(|e| *e < 3);
    if let Some(rest) = name.strip_prefix("M_T(tau") {
        let (power, tail) = rest.split_once(")(")?;
        let tau_power = match power {
            "" => 1,
            "^2" => 2,
            _ => return None,
        };
        return Some(Recipe::TwistedM { tau_power, eps: eps_of(tail)? });
    }
    if let Some(rest) = name.strip_prefix("W_T(tau") {
        let (power, tail) = rest.split_once(")(")?;
        let tau_power = match power {
            "" => 1,
            "^2" => 2,
            _ => return None,
        };
        return Some(Recipe::TwistedW { tau_power, eps: eps_of(tail)? });
    }
    match name {
        "Mk^c" => Some(Recipe::MkC),
        "Wk^c" => Some(Recipe::WkC),
        _ => {
            if let Some(e) = name.strip_prefix("M(") {
                Some(Recipe::Vacuum { eps: eps_of(e)? })
            } else {
                Some(Recipe::WSector { eps: eps_of(name.strip_prefix("W(")?)? })
            }
        }
    }
}

/// The twenty irreducible modules with their top-level data and character recipe.
pub fn module_descriptors() -> Vec<ModuleDescriptor> {
    builtin_spectrum()
        .points
        .into_iter()
        .map(|p| ModuleDescriptor {
            recipe: recipe_for(&p.module_name).expect("bundled module names are known"),
            name: p.module_name,
            top_weight: p.x,
            j0: p.y,
        })
        .collect()
}

pub fn module_descriptor(name: &str) -> Result<ModuleDescriptor> {
    module_descriptors()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownModule(name.to_string()))
}

/// `q^{1/20}` in lattice units.
const CHARGE_SHIFT: i64 = DEN / 20;

/// `q^{−1/20}·ch` of the recipe, to truncation `trunc`.
fn shifted_character(recipe: Recipe, trunc: i64) -> QSeries {
    let w = trunc + PAD;
    let third = Rat::frac(1, 3);
    match recipe {
        Recipe::Vacuum { eps } | Recipe::WSector { eps } => {
            let vacuum = matches!(recipe, Recipe::Vacuum { .. });
            let (a1, a2, r3) = if vacuum { ((1, 1), (3, 1), (3, 3)) } else { ((3, 2), (3, 3), (4, 3)) };
            let untwisted = xi3(1, 1, 1, w)
                .mul(&xi3(2, a1.0, a1.1, w))
                .add(&xi3(1, 2, 1, w).mul(&xi3(2, a2.0, a2.1, w)));
            let twisted = eta_quotient(EtaScale::One, EtaScale::Three, w).mul(&xi3(3, r3.0, r3.1, w));
            let weight = match (vacuum, eps) {
                (true, 0) => 2,
                (true, _) => -1,
                (false, 0) => -2,
                (false, _) => 1,
            };
            untwisted.add(&twisted.scale(&Rat::int(weight))).scale(&third).truncate(trunc)
        }
        Recipe::MkC => xi3(1, 2, 2, w).mul(&xi3(2, 2, 1, w)).truncate(trunc),
        Recipe::WkC => xi3(1, 2, 2, w).mul(&xi3(2, 2, 2, w)).truncate(trunc),
        Recipe::TwistedM { eps, .. } | Recipe::TwistedW { eps, .. } => {
            let (mt, wt) = twisted_base_chars(trunc);
            let eps = i64::from(eps);
            let (base, class) = match recipe {
                Recipe::TwistedM { .. } => (mt, DEN / 9 + eps * 2 * DEN / 3),
                _ => (wt, 2 * DEN / 45 + eps * DEN / 3),
            };
            residue_extract(&base, class - CHARGE_SHIFT)
        }
    }
}

/// Character `tr q^{L(0)}` of the module, exact below `trunc`.
pub fn module_character(d: &ModuleDescriptor, trunc: i64) -> QSeries {
    shifted_character(d.recipe, trunc - CHARGE_SHIFT).shift(CHARGE_SHIFT)
}

/// All twenty characters, built in parallel, in descriptor order.
pub fn all_module_characters(trunc: i64) -> Vec<(ModuleDescriptor, QSeries)> {
    module_descriptors()
        .into_par_iter()
        .map(|d| {
            let ch = module_character(&d, trunc);
            (d, ch)
        })
        .collect()
}
