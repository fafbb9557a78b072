use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::basis::{Budget, GroebnerBasis};
use crate::error::Result;
use crate::matrix::FreeModuleMap;
use crate::poly::{Monomial, Polynomial, Ring};

/// Dimension over Q of a module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QDim {
    Finite(u64),
    Infinite,
}

impl QDim {
    pub fn finite(self) -> Option<u64> {
        match self {
            QDim::Finite(d) => Some(d),
            QDim::Infinite => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == QDim::Finite(0)
    }
}

impl std::ops::Add for QDim {
    type Output = QDim;

    fn add(self, rhs: QDim) -> QDim {
        match (self, rhs) {
            (QDim::Finite(a), QDim::Finite(b)) => QDim::Finite(a + b),
            _ => QDim::Infinite,
        }
    }
}

impl fmt::Display for QDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QDim::Finite(d) => write!(f, "{d}"),
            QDim::Infinite => f.write_str("inf"),
        }
    }
}

/// `ring^generators / im(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    ring: Arc<Ring>,
    generators: usize,
    relations: FreeModuleMap,
}

impl ModulePresentation {
    /// Panics if `relations.rows() != generators` or the rings differ.
    pub fn new(ring: &Arc<Ring>, generators: usize, relations: FreeModuleMap) -> Self {
        assert_eq!(relations.rows(), generators, "relations must have one row per generator");
        assert_eq!(relations.ring().nvars(), ring.nvars(), "relations live in another ring");
        ModulePresentation { ring: ring.clone(), generators, relations }
    }

    /// The free module of the given rank.
    pub fn free(ring: &Arc<Ring>, rank: usize) -> Self {
        Self::new(ring, rank, FreeModuleMap::zeros(ring, rank, 0))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &FreeModuleMap {
        &self.relations
    }

    /// Groebner basis of the relation module, ring relations included.
    pub fn basis(&self, budget: &Budget) -> Result<GroebnerBasis> {
        GroebnerBasis::new(&self.ring, self.generators, &self.relations.columns(), budget)
    }

    pub fn q_dimension(&self, budget: &Budget) -> Result<QDim> {
        let gb = self.basis(budget)?;
        Ok(count_standard_monomials(&gb))
    }

    /// `M / (x_1, ..., x_n) M` for the given variables (all of them if `None`).
    pub fn reduce_at(&self, vars: Option<&[usize]>) -> ModulePresentation {
        let n = self.ring.nvars();
        let all: Vec<usize> = (0..n).collect();
        let vars = vars.unwrap_or(&all);
        let mut rel = self.relations.clone();
        for &v in vars {
            let xv = FreeModuleMap::scalar(&self.ring, self.generators, &Polynomial::var(n, v));
            rel = rel.hstack(&xv).expect("same ring and row count");
        }
        ModulePresentation::new(&self.ring, self.generators, rel)
    }

    /// `M / m M` with `m` the maximal ideal of the origin.
    pub fn at_origin(&self) -> ModulePresentation {
        self.reduce_at(None)
    }
}

/// Number of monomials `m e_c` outside the leading module; infinite if some
/// component has an unbounded staircase.
pub fn count_standard_monomials(gb: &GroebnerBasis) -> QDim {
    let n = gb.ring().nvars();
    let leads = gb.leading_terms();
    let mut total = 0u64;
    for c in 0..gb.rank() {
        let comp: Vec<&Monomial> = leads.iter().filter(|(k, _)| *k == c).map(|(_, m)| m).collect();
        if comp.iter().any(|m| m.is_one()) {
            continue;
        }
        let mut bounds = vec![None; n];
        for m in &comp {
            if let Some((i, e)) = m.pure_power() {
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        if bounds.iter().any(Option::is_none) {
            return QDim::Infinite;
        }
        let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
        let mut exps = vec![0u32; n];
        total += count_below(&comp, &bounds, &mut exps, 0);
    }
    QDim::Finite(total)
}

fn count_below(leads: &[&Monomial], bounds: &[u32], exps: &mut Vec<u32>, var: usize) -> u64 {
    if var == exps.len() {
        let m = Monomial::from_exponents(exps);
        return u64::from(!leads.iter().any(|l| l.divides(&m)));
    }
    let mut count = 0;
    for e in 0..bounds[var] {
        exps[var] = e;
        // a divisible prefix stays divisible as the exponent grows
        let prefix = Monomial::from_exponents(exps);
        if leads.iter().any(|l| l.divides(&prefix)) {
            break;
        }
        count += count_below(leads, bounds, exps, var + 1);
    }
    exps[var] = 0;
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn cyclic(ring: &Arc<Ring>, gens: &[&str]) -> ModulePresentation {
        let row: Vec<Polynomial> = gens.iter().map(|g| ring.parse(g).unwrap()).collect();
        ModulePresentation::new(ring, 1, FreeModuleMap::from_rows(ring, vec![row]).unwrap())
    }

    #[test]
    fn staircase_counts() {
        let b = Budget::default();
        let x = Ring::polynomial(&["x"]).unwrap();
        assert_eq!(cyclic(&x, &["x^3"]).q_dimension(&b).unwrap(), QDim::Finite(3));
        assert_eq!(cyclic(&x, &["0"]).q_dimension(&b).unwrap(), QDim::Infinite);
        let xy = Ring::polynomial(&["x", "y"]).unwrap();
        assert_eq!(cyclic(&xy, &["x^2", "x*y", "y^2"]).q_dimension(&b).unwrap(), QDim::Finite(3));
        assert_eq!(cyclic(&xy, &["x^2", "y^3"]).q_dimension(&b).unwrap(), QDim::Finite(6));
        assert_eq!(cyclic(&xy, &["x^2", "x*y"]).q_dimension(&b).unwrap(), QDim::Infinite);
        assert_eq!(cyclic(&xy, &["1"]).q_dimension(&b).unwrap(), QDim::Finite(0));
    }

    #[test]
    fn relations_of_the_ring_count() {
        let b = Budget::default();
        let r = Ring::with_relation_literals(&["x"], &["x^2"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(ModulePresentation::free(&r, 3).q_dimension(&b).unwrap(), QDim::Finite(6));
        let q = Ring::polynomial::<&str>(&[]).unwrap();
        assert_eq!(ModulePresentation::free(&q, 2).q_dimension(&b).unwrap(), QDim::Finite(2));
    }

    #[test]
    fn localized_rings() {
        // Q[x]_x / (x^2 - x) = Q[x]_x / (x - 1) = Q
        let b = Budget::default();
        let r = Ring::polynomial(&["x"]).unwrap();
        let loc = r.localization(&r.parse("x").unwrap(), "t").unwrap();
        assert_eq!(cyclic(&loc, &["x^2 - x"]).q_dimension(&b).unwrap(), QDim::Finite(1));
        assert_eq!(cyclic(&loc, &["x^3"]).q_dimension(&b).unwrap(), QDim::Finite(0));
    }

    #[test]
    fn fibre_at_origin() {
        let b = Budget::default();
        let r = Ring::polynomial(&["x", "y"]).unwrap();
        let m = ModulePresentation::free(&r, 2);
        assert_eq!(m.q_dimension(&b).unwrap(), QDim::Infinite);
        assert_eq!(m.at_origin().q_dimension(&b).unwrap(), QDim::Finite(2));
    }
}
