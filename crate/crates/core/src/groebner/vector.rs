//! Sparse elements of a free module, kept sorted by a position-over-term order.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub mon: Monomial,
    pub coeff: Rational,
}

/// Position over term: component 0 is the largest, ties broken by the monomial order.
pub(crate) fn cmp_pot(order: MonomialOrder, c1: usize, m1: &Monomial, c2: usize, m2: &Monomial) -> Ordering {
    match c2.cmp(&c1) {
        Ordering::Equal => order.cmp(m1, m2),
        o => o,
    }
}

/// Terms sorted from largest to smallest; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn from_dense(entries: &[Polynomial], order: MonomialOrder) -> Vector {
        Self::from_dense_offset(entries, 0, order)
    }

    /// Places `entries[i]` in component `offset + i`.
    pub fn from_dense_offset(entries: &[Polynomial], offset: usize, order: MonomialOrder) -> Vector {
        let mut terms: Vec<Term> = entries
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().map(move |(m, c)| Term { comp: offset + i, mon: m.clone(), coeff: c.clone() }))
            .collect();
        terms.sort_by(|a, b| cmp_pot(order, b.comp, &b.mon, a.comp, &a.mon));
        Vector { terms }
    }

    pub fn to_dense(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(nvars); rank];
        for t in &self.terms {
            out[t.comp] = &out[t.comp] + &Polynomial::term(t.mon.clone(), t.coeff.clone());
        }
        out
    }

    /// The components `[from, to)`, re-indexed to start at zero.
    pub fn dense_range(&self, from: usize, to: usize, nvars: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(nvars); to - from];
        for t in self.terms.iter().filter(|t| t.comp >= from && t.comp < to) {
            out[t.comp - from] = &out[t.comp - from] + &Polynomial::term(t.mon.clone(), t.coeff.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
    }

    pub fn make_monic(&mut self) {
        let Some(lead) = self.terms.first() else { return };
        if lead.coeff.is_one() {
            return;
        }
        let inv = Rational::one() / &lead.coeff;
        for t in &mut self.terms {
            t.coeff *= &inv;
        }
    }

    /// `self - c * m * other`.
    pub fn sub_scaled(&self, c: &Rational, m: &Monomial, other: &Vector, order: MonomialOrder) -> Vector {
        let scaled: Vec<Term> =
            other.terms.iter().map(|t| Term { comp: t.comp, mon: t.mon.mul(m), coeff: -(c * &t.coeff) }).collect();
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + scaled.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < scaled.len() {
            match cmp_pot(order, a[i].comp, &a[i].mon, scaled[j].comp, &scaled[j].mon) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(scaled[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].coeff + &scaled[j].coeff;
                    if !s.is_zero() {
                        out.push(Term { comp: a[i].comp, mon: a[i].mon.clone(), coeff: s });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(scaled.into_iter().skip(j));
        Vector { terms: out }
    }

    /// `m * self`.
    pub fn mul_monomial(&self, m: &Monomial) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { comp: t.comp, mon: t.mon.mul(m), coeff: t.coeff.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn pot_sorting_and_subtraction() {
        let r = Ring::polynomial(&["x", "y"]).unwrap();
        let o = MonomialOrder::Grevlex;
        let v = Vector::from_dense(&[r.parse("y").unwrap(), r.parse("x^2 + 1").unwrap()], o);
        assert_eq!(v.terms[0].comp, 0, "component 0 dominates regardless of degree");
        let w = Vector::from_dense(&[r.parse("1").unwrap(), r.zero()], o);
        let y = Monomial::var(2, 1);
        let diff = v.sub_scaled(&Rational::one(), &y, &w, o);
        assert_eq!(diff.to_dense(2, 2), vec![r.zero(), r.parse("x^2 + 1").unwrap()]);
        assert_eq!(diff.dense_range(1, 2, 2), vec![r.parse("x^2 + 1").unwrap()]);
    }
}
