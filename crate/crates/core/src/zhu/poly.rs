use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactnum::{QuadRat, Rat};

/// Power product `x^dx y^dy`, ordered graded-reverse-lexicographically with `y > x`.
///
/// For two variables this means: higher total degree first, then higher `y` degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerProduct {
    pub dx: u32,
    pub dy: u32,
}

impl PowerProduct {
    pub const ONE: PowerProduct = PowerProduct { dx: 0, dy: 0 };

    pub fn new(dx: u32, dy: u32) -> Self {
        PowerProduct { dx, dy }
    }

    pub fn degree(self) -> u32 {
        self.dx + self.dy
    }

    pub fn divides(self, other: PowerProduct) -> bool {
        self.dx <= other.dx && self.dy <= other.dy
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(self, other: PowerProduct) -> Option<PowerProduct> {
        self.divides(other).then(|| PowerProduct::new(other.dx - self.dx, other.dy - self.dy))
    }

    pub fn lcm(self, other: PowerProduct) -> PowerProduct {
        PowerProduct::new(self.dx.max(other.dx), self.dy.max(other.dy))
    }

    pub fn coprime(self, other: PowerProduct) -> bool {
        (self.dx == 0 || other.dx == 0) && (self.dy == 0 || other.dy == 0)
    }
}

impl std::ops::Mul for PowerProduct {
    type Output = PowerProduct;
    fn mul(self, rhs: PowerProduct) -> PowerProduct {
        PowerProduct::new(self.dx + rhs.dx, self.dy + rhs.dy)
    }
}

impl Ord for PowerProduct {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.dy.cmp(&other.dy))
    }
}

impl PartialOrd for PowerProduct {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |f: &mut fmt::Formatter<'_>, v: &str, d: u32| match d {
            0 => Ok(()),
            1 => write!(f, "{v}"),
            _ => write!(f, "{v}^{d}"),
        };
        match (self.dx, self.dy) {
            (0, 0) => write!(f, "1"),
            (_, 0) => factor(f, "x", self.dx),
            (0, _) => factor(f, "y", self.dy),
            _ => {
                factor(f, "x", self.dx)?;
                write!(f, "*")?;
                factor(f, "y", self.dy)
            }
        }
    }
}

/// Sparse polynomial in `x = [ω]`, `y = [J]` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<PowerProduct, Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        BiPoly::term(PowerProduct::ONE, c)
    }

    pub fn one() -> Self {
        BiPoly::constant(Rat::one())
    }

    pub fn x() -> Self {
        BiPoly::term(PowerProduct::new(1, 0), Rat::one())
    }

    pub fn y() -> Self {
        BiPoly::term(PowerProduct::new(0, 1), Rat::one())
    }

    pub fn term(p: PowerProduct, c: Rat) -> Self {
        let mut out = BiPoly::zero();
        out.add_term(p, c);
        out
    }

    pub fn monomial(dx: u32, dy: u32) -> Self {
        BiPoly::term(PowerProduct::new(dx, dy), Rat::one())
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

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PowerProduct, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: PowerProduct) -> Rat {
        self.terms.get(&p).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(PowerProduct, &Rat)> {
        self.terms.iter().next_back().map(|(p, c)| (*p, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|p| p.degree()).max()
    }

    pub fn add_term(&mut self, p: PowerProduct, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · p · other`.
    pub fn add_multiple(&mut self, other: &BiPoly, c: &Rat, p: PowerProduct) {
        if c.is_zero() {
            return;
        }
        for (q, d) in &other.terms {
            self.add_term(p * *q, c * d);
        }
    }

    pub fn scaled(&self, c: &Rat) -> BiPoly {
        let mut out = BiPoly::zero();
        out.add_multiple(self, c, PowerProduct::ONE);
        out
    }

    pub fn shifted(&self, p: PowerProduct) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(q, c)| (p * *q, c.clone())).collect() }
    }

    /// Scale so the leading coefficient is 1; the zero polynomial is unchanged.
    pub fn monic(&self) -> BiPoly {
        match self.leading() {
            Some((_, c)) => self.scaled(&(Rat::one() / c.clone())),
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, x: &QuadRat, y: &QuadRat) -> QuadRat {
        let mut acc = QuadRat::zero();
        for (p, c) in &self.terms {
            let v = &x.pow(p.dx) * &y.pow(p.dy);
            acc += &v.scale(c);
        }
        acc
    }

    /// `Some(c)` when `self = c · other` with `c ≠ 0`.
    pub fn proportionality(&self, other: &BiPoly) -> Option<Rat> {
        let (p, a) = self.leading()?;
        let (q, b) = other.leading()?;
        if p != q {
            return None;
        }
        let c = a.clone() / b.clone();
        (*self == other.scaled(&c)).then_some(c)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomials always serialize")
    }

    pub fn from_json(s: &str) -> Result<BiPoly> {
        Ok(serde_json::from_str(s)?)
    }
}

impl std::ops::Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out.add_multiple(rhs, &Rat::one(), PowerProduct::ONE);
        out
    }
}

impl std::ops::Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out.add_multiple(rhs, &Rat::int(-1), PowerProduct::ONE);
        out
    }
}

impl std::ops::Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (p, c) in &self.terms {
            out.add_multiple(rhs, c, *p);
        }
        out
    }
}

impl std::ops::AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        self.add_multiple(rhs, &Rat::one(), PowerProduct::ONE);
    }
}

/// Printed from the highest monomial down, e.g. `-(1/2)*x^2*y + 3*x - 1`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_unit = *p == PowerProduct::ONE;
            match (abs.is_one(), abs.is_integer(), is_unit) {
                (true, _, false) => write!(f, "{p}")?,
                (_, true, true) | (true, _, true) => write!(f, "{abs}")?,
                (_, false, true) => write!(f, "({abs})")?,
                (_, true, false) => write!(f, "{abs}*{p}")?,
                (_, false, false) => write!(f, "({abs})*{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTerm {
    dx: u32,
    dy: u32,
    coef: Rat,
}

/// JSON form: a list of `{"dx", "dy", "coef"}` in descending monomial order.
impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (p, c) in self.terms.iter().rev() {
            seq.serialize_element(&JsonTerm { dx: p.dx, dy: p.dy, coef: c.clone() })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<JsonTerm> = Vec::deserialize(d)?;
        let mut out = BiPoly::zero();
        for t in raw {
            out.add_term(PowerProduct::new(t.dx, t.dy), t.coef);
        }
        Ok(out)
    }
}
