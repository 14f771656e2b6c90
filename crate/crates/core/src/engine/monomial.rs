use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    L,
    J,
}

/// A mode `L(n)` or `J(n)`; its weight is `-n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub generator: Generator,
    pub index: i64,
}

impl Mode {
    pub fn l(index: i64) -> Self {
        Mode { generator: Generator::L, index }
    }

    pub fn j(index: i64) -> Self {
        Mode { generator: Generator::J, index }
    }

    pub fn weight(&self) -> i64 {
        -self.index
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.generator {
            Generator::L => 'L',
            Generator::J => 'J',
        };
        write!(f, "{g}({})", self.index)
    }
}

/// Normal-form word `L(-m₁)…L(-m_p)J(-n₁)…J(-n_q)𝟙` with
/// `m₁ ≥ … ≥ m_p ≥ 2` and `n₁ ≥ … ≥ n_q ≥ 3`.
///
/// Field order gives the basis order within a weight: `m_parts` compared
/// before `n_parts`, both lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct NormalMonomial {
    #[serde(rename = "m")]
    m_parts: Vec<u32>,
    #[serde(rename = "n")]
    n_parts: Vec<u32>,
}

impl NormalMonomial {
    pub fn new(m_parts: Vec<u32>, n_parts: Vec<u32>) -> Result<Self> {
        let descending = |v: &[u32]| v.windows(2).all(|w| w[0] >= w[1]);
        if !descending(&m_parts) || m_parts.iter().any(|&m| m < 2) {
            return Err(Error::InvalidMonomial(format!("L parts {m_parts:?}")));
        }
        if !descending(&n_parts) || n_parts.iter().any(|&n| n < 3) {
            return Err(Error::InvalidMonomial(format!("J parts {n_parts:?}")));
        }
        Ok(NormalMonomial { m_parts, n_parts })
    }

    pub fn vacuum() -> Self {
        NormalMonomial::default()
    }

    pub fn m_parts(&self) -> &[u32] {
        &self.m_parts
    }

    pub fn n_parts(&self) -> &[u32] {
        &self.n_parts
    }

    pub fn is_vacuum(&self) -> bool {
        self.m_parts.is_empty() && self.n_parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.m_parts.iter().sum::<u32>() + self.n_parts.iter().sum::<u32>()
    }

    pub fn j_length(&self) -> usize {
        self.n_parts.len()
    }

    /// `L(-2)^p J(-3)^q 𝟙`
    pub fn is_pure_power(&self) -> bool {
        self.m_parts.iter().all(|&m| m == 2) && self.n_parts.iter().all(|&n| n == 3)
    }

    pub(crate) fn prepend_l(&self, m: u32) -> Self {
        debug_assert!(m >= 2 && self.m_parts.first().is_none_or(|&m1| m >= m1));
        let mut m_parts = Vec::with_capacity(self.m_parts.len() + 1);
        m_parts.push(m);
        m_parts.extend_from_slice(&self.m_parts);
        NormalMonomial { m_parts, n_parts: self.n_parts.clone() }
    }

    pub(crate) fn prepend_j(&self, n: u32) -> Self {
        debug_assert!(self.m_parts.is_empty());
        debug_assert!(n >= 3 && self.n_parts.first().is_none_or(|&n1| n >= n1));
        let mut n_parts = Vec::with_capacity(self.n_parts.len() + 1);
        n_parts.push(n);
        n_parts.extend_from_slice(&self.n_parts);
        NormalMonomial { m_parts: Vec::new(), n_parts }
    }

    /// Drop the leftmost generator.
    pub(crate) fn tail(&self) -> Self {
        if self.m_parts.is_empty() {
            NormalMonomial { m_parts: Vec::new(), n_parts: self.n_parts[1..].to_vec() }
        } else {
            NormalMonomial { m_parts: self.m_parts[1..].to_vec(), n_parts: self.n_parts.clone() }
        }
    }
}

fn write_powers(f: &mut fmt::Formatter<'_>, g: char, parts: &[u32]) -> fmt::Result {
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        write!(f, "{g}(-{})", parts[i])?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_powers(f, 'L', &self.m_parts)?;
        write_powers(f, 'J', &self.n_parts)?;
        write!(f, "|0>")
    }
}

impl fmt::Debug for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Weight of a state vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorWeight {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

/// Sparse exact linear combination of normal monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct StateVector {
    terms: BTreeMap<NormalMonomial, Rat>,
}

impl StateVector {
    pub fn zero() -> Self {
        StateVector::default()
    }

    pub fn vacuum() -> Self {
        StateVector::monomial(NormalMonomial::vacuum())
    }

    pub fn monomial(m: NormalMonomial) -> Self {
        StateVector::term(m, Rat::one())
    }

    pub fn term(m: NormalMonomial, c: Rat) -> Self {
        let mut v = StateVector::zero();
        v.add_term(m, c);
        v
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

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &NormalMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: NormalMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &StateVector, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scaled(&self, c: &Rat) -> StateVector {
        let mut out = StateVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn weight(&self) -> VectorWeight {
        let mut it = self.terms.keys().map(NormalMonomial::weight);
        match it.next() {
            None => VectorWeight::Zero,
            Some(w) => {
                if it.all(|x| x == w) {
                    VectorWeight::Homogeneous(w)
                } else {
                    VectorWeight::Inhomogeneous
                }
            }
        }
    }

    /// Split into homogeneous components, ascending by weight.
    pub fn components(&self) -> BTreeMap<u32, StateVector> {
        let mut out: BTreeMap<u32, StateVector> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// Coordinates with respect to `basis`; panics if a term is missing from it.
    pub fn coordinates(&self, basis: &[NormalMonomial]) -> Vec<Rat> {
        let index: std::collections::HashMap<&NormalMonomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = vec![Rat::zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = *index
                .get(m)
                .unwrap_or_else(|| panic!("{m} is not in the supplied basis"));
            out[i] = c.clone();
        }
        out
    }

    pub fn from_coordinates(basis: &[NormalMonomial], coords: &[Rat]) -> StateVector {
        let mut out = StateVector::zero();
        for (m, c) in basis.iter().zip(coords) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("state vectors always serialize")
    }

    pub fn from_json(s: &str) -> Result<StateVector> {
        Ok(serde_json::from_str(s)?)
    }
}

impl std::ops::Add<&StateVector> for &StateVector {
    type Output = StateVector;
    fn add(self, rhs: &StateVector) -> StateVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rat::one());
        out
    }
}

impl std::ops::Sub<&StateVector> for &StateVector {
    type Output = StateVector;
    fn sub(self, rhs: &StateVector) -> StateVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rat::int(-1));
        out
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{abs}*")?;
                } else {
                    write!(f, "({abs})*")?;
                }
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    m: Vec<u32>,
    n: Vec<u32>,
    coef: Rat,
}

impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&JsonTerm {
                m: m.m_parts.clone(),
                n: m.n_parts.clone(),
                coef: c.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<JsonTerm> = Vec::deserialize(d)?;
        let mut out = StateVector::zero();
        for t in raw {
            let m = NormalMonomial::new(t.m, t.n).map_err(serde::de::Error::custom)?;
            out.add_term(m, t.coef);
        }
        Ok(out)
    }
}

/// Partitions of `n` into parts `>= min_part`, each written in descending order.
pub fn partitions_min_part(n: u32, min_part: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let top = max.min(n);
        // descend so output order is reversed; sorted afterwards
        for p in (min..=top).rev() {
            cur.push(p);
            rec(n - p, p, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Normal monomials of weight `h` in basis order.
pub fn enumerate_basis(h: u32) -> Vec<NormalMonomial> {
    let mut out = Vec::new();
    for a in 0..=h {
        let ms = partitions_min_part(a, 2);
        let ns = partitions_min_part(h - a, 3);
        for m in &ms {
            for n in &ns {
                out.push(NormalMonomial { m_parts: m.clone(), n_parts: n.clone() });
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(m: &[u32], n: &[u32]) -> NormalMonomial {
        NormalMonomial::new(m.to_vec(), n.to_vec()).unwrap()
    }

    #[test]
    fn small_bases() {
        assert_eq!(enumerate_basis(0), vec![NormalMonomial::vacuum()]);
        assert!(enumerate_basis(1).is_empty());
        assert_eq!(
            enumerate_basis(5),
            vec![mono(&[], &[5]), mono(&[2], &[3]), mono(&[3, 2], &[]), mono(&[5], &[])]
        );
        assert_eq!(enumerate_basis(12).len(), 76);
    }

    #[test]
    fn rejects_non_normal_words() {
        assert!(NormalMonomial::new(vec![2, 3], vec![]).is_err());
        assert!(NormalMonomial::new(vec![1], vec![]).is_err());
        assert!(NormalMonomial::new(vec![], vec![2]).is_err());
        assert!(NormalMonomial::new(vec![], vec![3, 4]).is_err());
    }

    #[test]
    fn weights() {
        let vac = StateVector::vacuum();
        assert_eq!(vac.weight(), VectorWeight::Homogeneous(0));
        let om = StateVector::monomial(mono(&[2], &[]));
        assert_eq!(om.weight(), VectorWeight::Homogeneous(2));
        assert_eq!((&om + &vac).weight(), VectorWeight::Inhomogeneous);
        assert_eq!(StateVector::zero().weight(), VectorWeight::Zero);
    }

    #[test]
    fn display_and_json() {
        let mut v = StateVector::zero();
        v.add_term(mono(&[4], &[3, 3]), Rat::frac(-1, 2));
        v.add_term(NormalMonomial::vacuum(), Rat::int(3));
        assert_eq!(v.to_string(), "3*|0> - (1/2)*L(-4)J(-3)^2|0>");
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[{"m":[],"n":[],"coef":"3"},{"m":[4],"n":[3,3],"coef":"-1/2"}]"#);
        assert_eq!(StateVector::from_json(&s).unwrap(), v);
        assert!(StateVector::from_json(r#"[{"m":[1],"n":[],"coef":"1"}]"#).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut v = StateVector::monomial(mono(&[2], &[]));
        v.add_term(mono(&[2], &[]), Rat::int(-1));
        assert!(v.is_zero());
    }
}
