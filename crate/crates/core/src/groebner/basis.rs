//! Buchberger's algorithm for submodules of `R^rank`, `R = Q[x] / (relations)`.
//!
//! Pairs are selected by ascending sugar degree with ties broken by creation
//! index, and pruned with the Gebauer-Moeller criteria. The product criterion is
//! not used since it does not hold for module elements. The final basis is
//! reduced and monic, hence unique for a fixed order.

use std::collections::BTreeMap;
use std::sync::Arc;

use log::trace;

use super::vector::{cmp_pot, Vector};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Upper bound on the work a single Groebner computation may do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of S-pair reductions per basis computation.
    pub max_reductions: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_reductions: 200_000 }
    }
}

impl Budget {
    pub fn new(max_reductions: u64) -> Self {
        Budget { max_reductions }
    }
}

/// A reduced Groebner basis of a submodule of a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    rank: usize,
    elements: Vec<Vector>,
}

struct Elem {
    v: Vector,
    sugar: u32,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    order: MonomialOrder,
    budget: &'a Budget,
    reductions: u64,
    elems: Vec<Elem>,
    /// active element indices per leading component
    by_comp: Vec<Vec<usize>>,
    pairs: BTreeMap<(u32, u64), Pair>,
    next_pair: u64,
}

impl<'a> Engine<'a> {
    fn new(order: MonomialOrder, rank: usize, budget: &'a Budget) -> Self {
        Engine {
            order,
            budget,
            reductions: 0,
            elems: Vec::new(),
            by_comp: vec![Vec::new(); rank],
            pairs: BTreeMap::new(),
            next_pair: 0,
        }
    }

    fn lead_mon(&self, i: usize) -> &Monomial {
        &self.elems[i].v.terms[0].mon
    }

    fn find_reducer(&self, comp: usize, mon: &Monomial) -> Option<usize> {
        self.by_comp[comp].iter().copied().find(|&g| self.lead_mon(g).divides(mon))
    }

    /// Full reduction against the active elements.
    fn reduce(&self, mut f: Vector, mut sugar: u32) -> (Vector, u32) {
        let mut rem = Vec::new();
        while let Some(lt) = f.terms.first() {
            match self.find_reducer(lt.comp, &lt.mon) {
                Some(g) => {
                    let ge = &self.elems[g];
                    let mult = ge.v.terms[0].mon.quotient_of(&lt.mon).expect("reducer divides");
                    sugar = sugar.max(ge.sugar + mult.degree());
                    let c = lt.coeff.clone();
                    f = f.sub_scaled(&c, &mult, &ge.v, self.order);
                }
                None => rem.push(f.terms.remove(0)),
            }
        }
        (Vector { terms: rem }, sugar)
    }

    fn insert(&mut self, mut v: Vector, sugar: u32) {
        v.make_monic();
        let h = self.elems.len();
        let comp = v.terms[0].comp;
        let hl = v.terms[0].mon.clone();
        self.elems.push(Elem { v, sugar });

        // new pairs, keeping only those whose lcm is not a multiple of another's
        let mut cands: Vec<(usize, Monomial)> =
            self.by_comp[comp].iter().map(|&g| (g, hl.lcm(self.lead_mon(g)))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while !cands.is_empty() {
            let (g1, l1) = cands.remove(0);
            let dominated = cands.iter().any(|(_, l2)| l2.divides(&l1)) || kept.iter().any(|(_, l2)| l2.divides(&l1));
            if !dominated {
                kept.push((g1, l1));
            }
        }

        // drop old pairs made redundant by h
        let elems = &self.elems;
        self.pairs.retain(|_, p| {
            if elems[p.i].v.terms[0].comp != comp || !hl.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].v.terms[0].mon.lcm(&hl);
            let lj = elems[p.j].v.terms[0].mon.lcm(&hl);
            li == p.lcm || lj == p.lcm
        });

        for (g, l) in kept {
            let sg = &self.elems[g];
            let s1 = sg.sugar + l.degree() - sg.v.terms[0].mon.degree();
            let s2 = self.elems[h].sugar + l.degree() - hl.degree();
            let id = self.next_pair;
            self.next_pair += 1;
            self.pairs.insert((s1.max(s2), id), Pair { i: g, j: h, lcm: l });
        }

        let elems = &self.elems;
        self.by_comp[comp].retain(|&g| !hl.divides(&elems[g].v.terms[0].mon));
        self.by_comp[comp].push(h);
    }

    fn s_vector(&self, p: &Pair) -> Vector {
        let (a, b) = (&self.elems[p.i].v, &self.elems[p.j].v);
        let ma = a.terms[0].mon.quotient_of(&p.lcm).expect("lcm multiple");
        let mb = b.terms[0].mon.quotient_of(&p.lcm).expect("lcm multiple");
        let one = num_traits::One::one();
        a.mul_monomial(&ma).sub_scaled(&one, &mb, b, self.order)
    }

    fn run(&mut self) -> Result<()> {
        while let Some(((sugar, id), pair)) = self.pairs.pop_first() {
            self.reductions += 1;
            if self.reductions > self.budget.max_reductions {
                return Err(Error::BudgetExceeded {
                    reductions: self.reductions - 1,
                    limit: self.budget.max_reductions,
                });
            }
            let s = self.s_vector(&pair);
            let (r, sugar) = self.reduce(s, sugar);
            trace!("spair #{id} ({}, {}) sugar {sugar}: {}", pair.i, pair.j, if r.is_zero() { "zero" } else { "new" });
            if !r.is_zero() {
                self.insert(r, sugar);
            }
        }
        Ok(())
    }

    /// Minimal, tail-reduced, monic basis sorted by leading term.
    fn finish(self) -> Vec<Vector> {
        let order = self.order;
        let mut active: Vec<usize> = self.by_comp.iter().flatten().copied().collect();
        active.sort_unstable();
        let minimal: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&g| {
                let lg = &self.elems[g].v.terms[0];
                !active.iter().any(|&h| {
                    if h == g {
                        return false;
                    }
                    let lh = &self.elems[h].v.terms[0];
                    lh.comp == lg.comp && lh.mon.divides(&lg.mon) && (lh.mon != lg.mon || h < g)
                })
            })
            .collect();
        let basis: Vec<&Vector> = minimal.iter().map(|&g| &self.elems[g].v).collect();
        let mut out: Vec<Vector> = minimal
            .iter()
            .enumerate()
            .map(|(k, &g)| {
                let v = &self.elems[g].v;
                let mut head = Vector { terms: vec![v.terms[0].clone()] };
                let tail = Vector { terms: v.terms[1..].to_vec() };
                let others: Vec<&Vector> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, b)| *b).collect();
                head.terms.extend(reduce_against(&others, tail, order).terms);
                head.make_monic();
                head
            })
            .collect();
        out.sort_by(|a, b| {
            let (ta, tb) = (&a.terms[0], &b.terms[0]);
            cmp_pot(order, tb.comp, &tb.mon, ta.comp, &ta.mon)
        });
        out
    }
}

/// Full reduction of `f` against an arbitrary list of monic vectors.
pub(crate) fn reduce_against(basis: &[&Vector], mut f: Vector, order: MonomialOrder) -> Vector {
    let mut rem = Vec::new();
    while let Some(lt) = f.terms.first() {
        let reducer = basis.iter().find(|g| {
            let gl = &g.terms[0];
            gl.comp == lt.comp && gl.mon.divides(&lt.mon)
        });
        match reducer {
            Some(g) => {
                let gl = &g.terms[0];
                let mult = gl.mon.quotient_of(&lt.mon).expect("reducer divides");
                let c = &lt.coeff / &gl.coeff;
                f = f.sub_scaled(&c, &mult, g, order);
            }
            None => rem.push(f.terms.remove(0)),
        }
    }
    Vector { terms: rem }
}

impl GroebnerBasis {
    /// Basis of the submodule generated by `generators` plus `relations * e_c`
    /// for every component `c`.
    pub fn new(ring: &Arc<Ring>, rank: usize, generators: &[Vec<Polynomial>], budget: &Budget) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if g.len() != rank {
                return Err(Error::Shape(format!("generator {k} has length {}, expected {rank}", g.len())));
            }
            if g.iter().any(|p| p.nvars() != ring.nvars()) {
                return Err(Error::RingMismatch(format!("generator {k} lives in another ring")));
            }
        }
        let order = ring.order();
        let vectors = generators.iter().map(|g| Vector::from_dense(g, order));
        let mut all: Vec<Vector> = vectors.collect();
        for c in 0..rank {
            for r in ring.relations() {
                let mut dense = vec![ring.zero(); rank];
                dense[c] = r.clone();
                all.push(Vector::from_dense(&dense, order));
            }
        }
        let elements = build(order, rank, all, budget)?;
        Ok(GroebnerBasis { ring: ring.clone(), rank, elements })
    }

    pub(crate) fn from_vectors(ring: &Arc<Ring>, rank: usize, vectors: Vec<Vector>, budget: &Budget) -> Result<Self> {
        let elements = build(ring.order(), rank, vectors, budget)?;
        Ok(GroebnerBasis { ring: ring.clone(), rank, elements })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<Vec<Polynomial>> {
        self.elements.iter().map(|v| v.to_dense(self.rank, self.ring.nvars())).collect()
    }

    pub(crate) fn vectors(&self) -> &[Vector] {
        &self.elements
    }

    /// Leading `(component, monomial)` of every element.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements.iter().map(|v| (v.terms[0].comp, v.terms[0].mon.clone())).collect()
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.rank, "vector rank mismatch");
        let r = self.reduce_vector(Vector::from_dense(v, self.ring.order()));
        r.to_dense(self.rank, self.ring.nvars())
    }

    pub(crate) fn reduce_vector(&self, v: Vector) -> Vector {
        let basis: Vec<&Vector> = self.elements.iter().collect();
        reduce_against(&basis, v, self.ring.order())
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        self.normal_form(v).iter().all(Polynomial::is_zero)
    }

    /// For rank one: whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.rank == 1 && self.elements.iter().any(|v| v.terms[0].mon.is_one())
    }

    /// Re-checks Buchberger's criterion: every S-vector reduces to zero.
    pub fn certify(&self) -> bool {
        let order = self.ring.order();
        let basis: Vec<&Vector> = self.elements.iter().collect();
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                let (la, lb) = (&a.terms[0], &b.terms[0]);
                if la.comp != lb.comp {
                    continue;
                }
                let l = la.mon.lcm(&lb.mon);
                let ma = la.mon.quotient_of(&l).unwrap();
                let mb = lb.mon.quotient_of(&l).unwrap();
                let s = a.mul_monomial(&ma).sub_scaled(&num_traits::One::one(), &mb, b, order);
                if !reduce_against(&basis, s, order).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn build(order: MonomialOrder, rank: usize, generators: Vec<Vector>, budget: &Budget) -> Result<Vec<Vector>> {
    let mut engine = Engine::new(order, rank, budget);
    for g in generators {
        if g.is_zero() {
            continue;
        }
        let sugar = g.max_degree();
        let (r, sugar) = engine.reduce(g, sugar);
        if !r.is_zero() {
            engine.insert(r, sugar);
        }
    }
    engine.run()?;
    Ok(engine.finish())
}
