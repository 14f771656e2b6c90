//! Ideals of `Q[x, y]`: Gröbner bases, quotient dimensions, and certification
//! of the twenty-point spectrum of the Zhu algebra.
//!
//! Bases are computed over `Q` only; `√−3` appears solely when evaluating at
//! spectrum points. A zero-dimensional ideal whose quotient has dimension 20
//! and which vanishes at 20 distinct points is the intersection of the 20
//! corresponding maximal ideals, which is what [`verify_spectrum`] certifies.

mod groebner;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use groebner::{buchberger, ideal_membership, GroebnerBasis, QuotientDimension};

use crate::error::Result;
use crate::exactnum::{QuadRat, Rat};
use crate::reference::builtin_vector;
use crate::zhu::{c2_image, zhu_image, BiPoly};

/// Candidate top-level eigenvalue pair `(L(0), J(0)) = (x, y)` of an irreducible module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumPoint {
    pub module_name: String,
    pub x: Rat,
    pub y: QuadRat,
}

/// The maximal ideal `⟨a·x − b, c·y − d·√−3⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaximalIdeal {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl MaximalIdeal {
    pub fn vanishes_at(&self, pt: &SpectrumPoint) -> bool {
        let gx = &(&Rat::int(self.a) * &pt.x) - &Rat::int(self.b);
        let gy = &pt.y.scale(&Rat::int(self.c)) - &QuadRat::new(Rat::zero(), Rat::int(self.d));
        gx.is_zero() && gy.is_zero()
    }
}

impl fmt::Display for MaximalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lin = |f: &mut fmt::Formatter<'_>, k: i64, v: &str| match k {
            1 => write!(f, "{v}"),
            _ => write!(f, "{k}{v}"),
        };
        write!(f, "<")?;
        lin(f, self.a, "x")?;
        match self.b {
            0 => {}
            b if b > 0 => write!(f, "-{b}")?,
            b => write!(f, "+{}", -b)?,
        }
        write!(f, ", ")?;
        lin(f, self.c, "y")?;
        match self.d {
            0 => {}
            d if d > 0 => write!(f, "-{d}sqrt(-3)")?,
            d => write!(f, "+{}sqrt(-3)", -d)?,
        }
        write!(f, ">")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleRow {
    name: String,
    table: u32,
    l0_base: Rat,
    l0_offset: Rat,
    j0_sqrt_m3: Rat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    version: u32,
    #[allow(dead_code)]
    description: String,
    modules: Vec<ModuleRow>,
    maximal_ideals: Vec<MaximalIdeal>,
}

/// Eigenvalue table of the irreducible modules together with an independent list of maximal ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub version: u32,
    pub points: Vec<SpectrumPoint>,
    /// Which eigenvalue table each point comes from.
    pub tables: Vec<u32>,
    pub ideals: Vec<MaximalIdeal>,
}

impl SpectrumTable {
    pub fn from_json(s: &str) -> Result<SpectrumTable> {
        let raw: RawSpectrum = serde_json::from_str(s)?;
        let (points, tables) = raw
            .modules
            .into_iter()
            .map(|r| {
                let pt = SpectrumPoint {
                    module_name: r.name,
                    x: &r.l0_base + &r.l0_offset,
                    y: QuadRat::new(Rat::zero(), r.j0_sqrt_m3),
                };
                (pt, r.table)
            })
            .unzip();
        Ok(SpectrumTable { version: raw.version, points, tables, ideals: raw.maximal_ideals })
    }

    /// Pair each point with the unique listed ideal vanishing there.
    pub fn pairing(&self) -> std::result::Result<Vec<(String, MaximalIdeal)>, SpectrumFailure> {
        if self.points.len() != self.ideals.len() {
            return Err(SpectrumFailure::Unpaired(format!(
                "{} points but {} ideals",
                self.points.len(),
                self.ideals.len()
            )));
        }
        let mut used = vec![false; self.ideals.len()];
        let mut out = Vec::new();
        for pt in &self.points {
            let hits: Vec<usize> = (0..self.ideals.len()).filter(|&k| self.ideals[k].vanishes_at(pt)).collect();
            match hits.as_slice() {
                [k] if !used[*k] => {
                    used[*k] = true;
                    out.push((pt.module_name.clone(), self.ideals[*k]));
                }
                _ => return Err(SpectrumFailure::Unpaired(pt.module_name.clone())),
            }
        }
        Ok(out)
    }
}

/// The shipped table of twenty modules.
pub fn builtin_spectrum() -> SpectrumTable {
    SpectrumTable::from_json(include_str!("../../data/spectrum_points.json")).expect("bundled spectrum is valid")
}

/// First failure found by [`verify_spectrum`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumFailure {
    Distinctness { first: String, second: String },
    Vanishing { module: String, generator: usize, value: String },
    Dimension { expected: usize, found: QuotientDimension },
    Unpaired(String),
}

impl fmt::Display for SpectrumFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumFailure::Distinctness { first, second } => {
                write!(f, "FAIL(distinctness): {first} and {second} coincide")
            }
            SpectrumFailure::Vanishing { module, generator, value } => {
                write!(f, "FAIL(vanishing): F{} at {module} is {value}", generator + 1)
            }
            SpectrumFailure::Dimension { expected, found } => {
                write!(f, "FAIL(dimension): expected {expected}, found {found}")
            }
            SpectrumFailure::Unpaired(what) => write!(f, "FAIL(pairing): {what}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub points: usize,
    pub quotient_dimension: QuotientDimension,
    pub failure: Option<SpectrumFailure>,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Check distinctness, vanishing of every generator, and `dim Q[x,y]/I = |points|`.
pub fn verify_spectrum(gens: &[BiPoly], points: &[SpectrumPoint]) -> SpectrumReport {
    let gb = buchberger(gens);
    let quotient_dimension = gb.quotient_dimension();
    let failure = first_failure(gens, points, quotient_dimension);
    SpectrumReport { points: points.len(), quotient_dimension, failure }
}

fn first_failure(gens: &[BiPoly], points: &[SpectrumPoint], dim: QuotientDimension) -> Option<SpectrumFailure> {
    for (i, p) in points.iter().enumerate() {
        if let Some(q) = points[i + 1..].iter().find(|q| q.x == p.x && q.y == p.y) {
            return Some(SpectrumFailure::Distinctness {
                first: p.module_name.clone(),
                second: q.module_name.clone(),
            });
        }
    }
    for p in points {
        for (k, g) in gens.iter().enumerate() {
            let v = g.evaluate(&QuadRat::from_rat(p.x.clone()), &p.y);
            if !v.is_zero() {
                return Some(SpectrumFailure::Vanishing {
                    module: p.module_name.clone(),
                    generator: k,
                    value: v.to_string(),
                });
            }
        }
    }
    (dim != QuotientDimension::Finite(points.len()))
        .then_some(SpectrumFailure::Dimension { expected: points.len(), found: dim })
}

/// Zhu images `F₁..F₄` of `v¹²`, `J(−1)v¹²`, `J(−2)v¹²`, `J(−1)²v¹²`, computed from scratch.
pub fn zhu_relations() -> Vec<BiPoly> {
    crate::reference::BUILTIN_NAMES
        .iter()
        .map(|n| zhu_image(&builtin_vector(n).expect("builtin")))
        .collect()
}

/// C₂-quotient images of `v¹²`, `J(−1)v¹²`, `J(−1)²v¹²`.
pub fn c2_relations() -> Vec<BiPoly> {
    ["v12", "J1v12", "J1J1v12"]
        .iter()
        .map(|n| c2_image(&builtin_vector(n).expect("builtin")))
        .collect()
}

/// Monomials whose vanishing in `W/C₂(W)` shows that quotient is finite-dimensional.
pub fn c2_nilpotency_targets() -> Vec<BiPoly> {
    [(8, 0), (2, 4), (5, 2), (0, 8)]
        .iter()
        .map(|&(dx, dy)| BiPoly::monomial(dx, dy))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_pairs_bijectively() {
        let t = builtin_spectrum();
        assert_eq!(t.points.len(), 20);
        let pairs = t.pairing().unwrap();
        let m2 = pairs.iter().find(|(n, _)| n == "M(2)").unwrap().1;
        assert_eq!(m2.to_string(), "<x-2, y-12sqrt(-3)>");
        let w1 = pairs.iter().find(|(n, _)| n == "W_T(tau)(1)").unwrap().1;
        assert_eq!(w1.to_string(), "<45x-17, 81y+22sqrt(-3)>");
    }

    #[test]
    fn failure_order() {
        let pt = |n: &str, x: i64, y: i64| SpectrumPoint {
            module_name: n.into(),
            x: Rat::int(x),
            y: QuadRat::new(Rat::zero(), Rat::int(y)),
        };
        let gens = [BiPoly::monomial(2, 0), BiPoly::y()];
        let r = verify_spectrum(&gens, &[pt("a", 0, 0), pt("b", 0, 0)]);
        assert!(matches!(r.failure, Some(SpectrumFailure::Distinctness { .. })));
        let r = verify_spectrum(&gens, &[pt("a", 0, 0), pt("b", 1, 0)]);
        assert!(matches!(r.failure, Some(SpectrumFailure::Vanishing { generator: 0, .. })));
        let r = verify_spectrum(&gens, &[pt("a", 0, 0)]);
        assert_eq!(r.failure, Some(SpectrumFailure::Dimension { expected: 1, found: QuotientDimension::Finite(2) }));
    }
}
