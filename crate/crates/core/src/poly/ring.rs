use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::MonomialOrder;
use super::parse::parse_polynomial;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// A finitely presented commutative Q-algebra `Q[vars] / (relations)`.
///
/// Localizations `A_f` are written as `A[t] / (t f - 1)` and zero fibres as
/// `A / (W)`, so every ring the engine touches is a quotient of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    relations: Vec<Polynomial>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(vars: Vec<String>, relations: Vec<Polynomial>, order: MonomialOrder) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("variable `{v}` declared twice")));
            }
        }
        for r in &relations {
            if r.nvars() != vars.len() {
                return Err(Error::InvalidRing("relation has the wrong arity".into()));
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Ring { vars, relations, order })
    }

    /// The polynomial ring on the given names with grevlex order.
    pub fn polynomial<S: AsRef<str>>(vars: &[S]) -> Result<Arc<Ring>> {
        let vars = vars.iter().map(|v| v.as_ref().to_string()).collect();
        Ok(Arc::new(Ring::new(vars, Vec::new(), MonomialOrder::Grevlex)?))
    }

    /// Parses relation literals against the declared variables.
    pub fn with_relation_literals<S: AsRef<str>>(
        vars: &[S],
        relations: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<Ring>> {
        let base = Ring::new(vars.iter().map(|v| v.as_ref().to_string()).collect(), Vec::new(), order)?;
        let rels = relations.iter().map(|r| base.parse(r.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(Ring::new(base.vars, rels, order)?))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn has_relations(&self) -> bool {
        !self.relations.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, name: &str) -> Option<Polynomial> {
        self.var_index(name).map(|i| Polynomial::var(self.nvars(), i))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn parse(&self, literal: &str) -> Result<Polynomial> {
        parse_polynomial(literal, &self.vars)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.to_literal(&self.vars, self.order)
    }

    /// `self / (extra)`.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<Arc<Ring>> {
        let mut rels = self.relations.clone();
        for p in extra {
            if p.nvars() != self.nvars() {
                return Err(Error::RingMismatch("quotient by a polynomial of another ring".into()));
            }
            if !p.is_zero() && !rels.contains(p) {
                rels.push(p.clone());
            }
        }
        Ok(Arc::new(Ring::new(self.vars.clone(), rels, self.order)?))
    }

    /// `self[t] / (t f - 1)`, with a fresh name for `t` derived from `hint`.
    pub fn localization(&self, f: &Polynomial, hint: &str) -> Result<Arc<Ring>> {
        if f.nvars() != self.nvars() {
            return Err(Error::RingMismatch("localizing at a polynomial of another ring".into()));
        }
        let mut name = hint.to_string();
        while self.var_index(&name).is_some() {
            name.push('_');
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        let n = vars.len();
        let mut rels: Vec<Polynomial> = self.relations.iter().map(|r| r.extend_vars(1)).collect();
        let t = Polynomial::var(n, n - 1);
        rels.push(&t * &f.extend_vars(1) - Polynomial::one(n));
        Ok(Arc::new(Ring::new(vars, rels, self.order)?))
    }

    /// The same ring without its relations.
    pub fn ambient(&self) -> Ring {
        Ring { vars: self.vars.clone(), relations: Vec::new(), order: self.order }
    }
}

/// Textual form of a ring, as it appears in problem and object files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub order: MonomialOrder,
}

impl RingSpec {
    pub fn build(&self) -> Result<Arc<Ring>> {
        Ring::with_relation_literals(&self.vars, &self.relations, self.order)
    }
}

impl Ring {
    pub fn spec(&self) -> RingSpec {
        RingSpec {
            vars: self.vars.clone(),
            relations: self.relations.iter().map(|r| self.format(r)).collect(),
            order: self.order,
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Which block of a product ring a pullback lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// `A_1 (x) A_2` presented on the disjoint union of the two variable sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRing {
    ring: Arc<Ring>,
    left: Arc<Ring>,
    right: Arc<Ring>,
}

impl ProductRing {
    /// Product of two rings whose variable names must be disjoint.
    pub fn new(left: Arc<Ring>, right: Arc<Ring>) -> Result<Self> {
        if left.order() != right.order() {
            return Err(Error::RingMismatch("factors use different monomial orders".into()));
        }
        for v in left.vars() {
            if right.var_index(v).is_some() {
                return Err(Error::VariableCollision(format!("`{v}` appears in both factors")));
            }
        }
        let mut vars = left.vars().to_vec();
        vars.extend(right.vars().iter().cloned());
        let n = vars.len();
        let (nl, nr) = (left.nvars(), right.nvars());
        let lmap: Vec<usize> = (0..nl).collect();
        let rmap: Vec<usize> = (nl..nl + nr).collect();
        let mut rels: Vec<Polynomial> = left.relations().iter().map(|r| r.remap(n, &lmap)).collect();
        rels.extend(right.relations().iter().map(|r| r.remap(n, &rmap)));
        let ring = Arc::new(Ring::new(vars, rels, left.order())?);
        Ok(ProductRing { ring, left, right })
    }

    /// `A (x) A` with the copies renamed `v_1` and `v_2`.
    pub fn doubled(ring: &Arc<Ring>) -> Result<Self> {
        let rename = |suffix: &str| -> Result<Arc<Ring>> {
            let vars = ring.vars().iter().map(|v| format!("{v}_{suffix}")).collect();
            Ok(Arc::new(Ring::new(vars, ring.relations().to_vec(), ring.order())?))
        };
        ProductRing::new(rename("1")?, rename("2")?)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn left(&self) -> &Arc<Ring> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Ring> {
        &self.right
    }

    /// Pullback along the projection to one factor.
    pub fn pullback(&self, p: &Polynomial, which: Factor) -> Result<Polynomial> {
        let (expected, offset) = match which {
            Factor::First => (self.left.nvars(), 0),
            Factor::Second => (self.right.nvars(), self.left.nvars()),
        };
        if p.nvars() != expected {
            return Err(Error::RingMismatch(format!(
                "factor has arity {expected}, polynomial has arity {}",
                p.nvars()
            )));
        }
        let map: Vec<usize> = (offset..offset + expected).collect();
        Ok(p.remap(self.ring.nvars(), &map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        let r = Ring::with_relation_literals(&["x", "t"], &["x*t - 1"], MonomialOrder::Lex).unwrap();
        let json = serde_json::to_string(&r.spec()).unwrap();
        assert_eq!(json, r#"{"vars":["x","t"],"relations":["x*t - 1"],"order":"lex"}"#);
        let back: RingSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(*back.build().unwrap(), *r);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(Ring::polynomial(&["x", "x"]).is_err());
        assert!(Ring::polynomial(&["1x"]).is_err());
        assert!(Ring::polynomial(&["x_1", "y2"]).is_ok());
    }

    #[test]
    fn pullbacks_into_doubled_ring() {
        let a = Ring::polynomial(&["x"]).unwrap();
        let prod = ProductRing::doubled(&a).unwrap();
        assert_eq!(prod.ring().vars(), &["x_1".to_string(), "x_2".to_string()]);
        let x2 = a.parse("x^2").unwrap();
        let first = prod.pullback(&x2, Factor::First).unwrap();
        let second = prod.pullback(&x2, Factor::Second).unwrap();
        assert_eq!(prod.ring().format(&first), "x_1^2");
        assert_eq!(prod.ring().format(&second), "x_2^2");

        let x3 = a.parse("x^3").unwrap();
        let wt = prod.pullback(&x3, Factor::First).unwrap() - prod.pullback(&x3, Factor::Second).unwrap();
        assert_eq!(prod.ring().format(&wt), "x_1^3 - x_2^3");
    }

    #[test]
    fn explicit_product_and_collisions() {
        let a = Ring::polynomial(&["x"]).unwrap();
        let b = Ring::polynomial(&["y"]).unwrap();
        let prod = ProductRing::new(a.clone(), b).unwrap();
        let p = prod.pullback(&a.parse("x^2").unwrap(), Factor::Second);
        assert!(p.is_ok(), "arity matches even if the names differ");
        assert_eq!(prod.ring().format(&p.unwrap()), "y^2");
        assert!(matches!(ProductRing::new(a.clone(), a.clone()), Err(Error::VariableCollision(_))));
        let two = Ring::polynomial(&["u", "v"]).unwrap();
        let prod = ProductRing::new(a, two.clone()).unwrap();
        assert!(prod.pullback(&two.parse("u").unwrap(), Factor::First).is_err());
    }

    #[test]
    fn localization_names_are_fresh() {
        let a = Ring::polynomial(&["x", "t"]).unwrap();
        let f = a.parse("x").unwrap();
        let loc = a.localization(&f, "t").unwrap();
        assert_eq!(loc.vars()[2], "t_");
        assert_eq!(loc.format(&loc.relations()[0]), "x*t_ - 1");
    }
}
