use std::collections::BTreeSet;

use crate::exactnum::Rat;
use crate::zhu::{BiPoly, PowerProduct};

/// Dimension of `Q[x, y]/I` as a vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientDimension {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotientDimension::Finite(n) => write!(f, "{n}"),
            QuotientDimension::Infinite => write!(f, "infinite"),
        }
    }
}

/// Reduced Gröbner basis under grevlex with `y > x`, sorted by descending leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    polys: Vec<BiPoly>,
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[BiPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<PowerProduct> {
        self.polys.iter().filter_map(|p| p.leading().map(|(t, _)| t)).collect()
    }

    /// Remainder of `p` on full division by the basis.
    pub fn reduce(&self, p: &BiPoly) -> BiPoly {
        reduce(p, &self.polys)
    }

    pub fn contains(&self, p: &BiPoly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Monomials divisible by no leading term, or `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<PowerProduct>> {
        let lts = self.leading_terms();
        if lts.contains(&PowerProduct::ONE) {
            return Some(Vec::new());
        }
        let x_bound = lts.iter().filter(|t| t.dy == 0).map(|t| t.dx).min()?;
        let y_bound = lts.iter().filter(|t| t.dx == 0).map(|t| t.dy).min()?;
        let mut out: Vec<PowerProduct> = (0..x_bound)
            .flat_map(|dx| (0..y_bound).map(move |dy| PowerProduct::new(dx, dy)))
            .filter(|m| !lts.iter().any(|t| t.divides(*m)))
            .collect();
        out.sort();
        Some(out)
    }

    pub fn quotient_dimension(&self) -> QuotientDimension {
        match self.standard_monomials() {
            Some(s) => QuotientDimension::Finite(s.len()),
            None => QuotientDimension::Infinite,
        }
    }
}

fn reduce(p: &BiPoly, divisors: &[BiPoly]) -> BiPoly {
    let mut rest = p.clone();
    let mut remainder = BiPoly::zero();
    while let Some((lt, lc)) = rest.leading() {
        let lc = lc.clone();
        let hit = divisors.iter().find_map(|g| {
            let (glt, gc) = g.leading()?;
            glt.quotient_of(lt).map(|q| (g, q, gc.clone()))
        });
        match hit {
            Some((g, q, gc)) => rest.add_multiple(g, &(-(lc / gc)), q),
            None => {
                remainder.add_term(lt, lc.clone());
                rest.add_term(lt, -lc);
            }
        }
    }
    remainder
}

fn s_polynomial(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let (ft, fc) = f.leading().expect("nonzero");
    let (gt, gc) = g.leading().expect("nonzero");
    let l = ft.lcm(gt);
    let mut s = BiPoly::zero();
    s.add_multiple(f, &(Rat::one() / fc.clone()), ft.quotient_of(l).expect("lcm"));
    s.add_multiple(g, &(-(Rat::one() / gc.clone())), gt.quotient_of(l).expect("lcm"));
    s
}

/// The unique reduced, monic Gröbner basis of the ideal generated by `gens`.
///
/// Pairs with coprime leading terms are skipped, as are pairs `(i, j)` for which
/// some `k` has a leading term dividing `lcm(lt i, lt j)` with both `(i, k)` and
/// `(j, k)` already handled.
pub fn buchberger(gens: &[BiPoly]) -> GroebnerBasis {
    let mut basis: Vec<BiPoly> = gens.iter().filter(|g| !g.is_zero()).map(BiPoly::monic).collect();
    let mut pending: BTreeSet<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some(&(i, j)) = pending.iter().next() {
        pending.remove(&(i, j));
        let lt = |k: usize| basis[k].leading().expect("nonzero").0;
        let (lti, ltj) = (lt(i), lt(j));
        if lti.coprime(ltj) {
            continue;
        }
        let l = lti.lcm(ltj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lt(k).divides(l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let h = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !h.is_zero() {
            let n = basis.len();
            basis.push(h.monic());
            pending.extend((0..n).map(|k| (k, n)));
        }
    }
    GroebnerBasis { polys: interreduce(basis) }
}

fn interreduce(basis: Vec<BiPoly>) -> Vec<BiPoly> {
    let lts: Vec<PowerProduct> = basis.iter().map(|p| p.leading().expect("nonzero").0).collect();
    let mut minimal: Vec<BiPoly> = Vec::new();
    let mut seen: Vec<PowerProduct> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let redundant = lts.iter().enumerate().any(|(o, t)| {
            o != k && t.divides(lts[k]) && (*t != lts[k] || o < k)
        });
        if !redundant && !seen.contains(&lts[k]) {
            seen.push(lts[k]);
            minimal.push(p.clone());
        }
    }
    let mut reduced: Vec<BiPoly> = (0..minimal.len())
        .map(|k| {
            let others: Vec<BiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != k)
                .map(|(_, p)| p.clone())
                .collect();
            let (lt, lc) = minimal[k].leading().expect("nonzero");
            let mut tail = minimal[k].clone();
            tail.add_term(lt, -lc.clone());
            let mut r = reduce(&tail, &others);
            r.add_term(lt, lc.clone());
            r.monic()
        })
        .collect();
    reduced.sort_by(|a, b| b.leading().map(|t| t.0).cmp(&a.leading().map(|t| t.0)));
    reduced
}

/// Whether `p` lies in the ideal generated by `gens`.
pub fn ideal_membership(p: &BiPoly, gens: &[BiPoly]) -> bool {
    buchberger(gens).contains(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(u32, u32, i64)]) -> BiPoly {
        let mut p = BiPoly::zero();
        for &(dx, dy, c) in terms {
            p.add_term(PowerProduct::new(dx, dy), Rat::int(c));
        }
        p
    }

    #[test]
    fn coordinate_ideal() {
        let gb = buchberger(&[BiPoly::x(), BiPoly::y()]);
        assert_eq!(gb.polys(), [BiPoly::y(), BiPoly::x()]);
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(1));
    }

    #[test]
    fn toy_two_generator_ideal() {
        let gb = buchberger(&[poly(&[(2, 0, 1), (0, 0, -1)]), poly(&[(1, 1, 1), (0, 1, -1)])]);
        // y(x-1) and x^2-1 generate an ideal whose standard monomials need a y-power bound
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Infinite);
        let gb = buchberger(&[poly(&[(2, 0, 1), (0, 0, -1)]), poly(&[(1, 1, 1), (0, 1, -1)]), poly(&[(0, 2, 1)])]);
        let std = gb.standard_monomials().unwrap();
        assert_eq!(std, [PowerProduct::ONE, PowerProduct::new(1, 0), PowerProduct::new(0, 1)]);
    }

    #[test]
    fn non_zero_dimensional() {
        let gb = buchberger(&[BiPoly::monomial(2, 0)]);
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Infinite);
        assert!(!ideal_membership(&BiPoly::x(), &[BiPoly::monomial(2, 0)]));
        assert!(ideal_membership(&BiPoly::monomial(3, 1), &[BiPoly::monomial(2, 0)]));
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(&[BiPoly::x(), &BiPoly::x() + &BiPoly::one()]);
        assert_eq!(gb.polys(), [BiPoly::one()]);
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(0));
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        proptest::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4).prop_map(|ts| {
            let mut p = BiPoly::zero();
            for (dx, dy, c) in ts {
                p.add_term(PowerProduct::new(dx, dy), Rat::int(c));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn basis_is_canonical(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let gb = buchberger(&[a.clone(), b.clone(), c.clone()]);
            prop_assert_eq!(&gb, &buchberger(&[c.clone(), a.clone(), b.clone()]));
            for g in [&a, &b, &c] {
                prop_assert!(gb.contains(g));
            }
            for (i, f) in gb.polys().iter().enumerate() {
                for g in &gb.polys()[i + 1..] {
                    prop_assert!(gb.reduce(&s_polynomial(f, g)).is_zero());
                }
            }
        }
    }
}
