//! Kernels, linear solving and homology over `Q[x] / I`.
//!
//! All three come from one construction: the columns `(M c_j, e_j)` of the
//! stacked matrix `[M; id]` in `R^(rows + cols)`. Under position-over-term the
//! first `rows` components are eliminated first, so basis elements whose leading
//! component is `>= rows` have zero top part and their bottom parts generate
//! `ker M`. Every element `(a, b)` satisfies `a = M b` modulo `I`.

use std::sync::Arc;

use super::basis::{Budget, GroebnerBasis};
use super::presentation::ModulePresentation;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::matrix::FreeModuleMap;
use crate::poly::{Polynomial, Ring};

/// Outcome of solving `M u = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lift {
    Solution(Vec<Polynomial>),
    /// `v` is not in the column span; `residue` is its normal form.
    NoSolution {
        residue: Vec<Polynomial>,
    },
}

impl Lift {
    pub fn solution(self) -> Option<Vec<Polynomial>> {
        match self {
            Lift::Solution(u) => Some(u),
            Lift::NoSolution { .. } => None,
        }
    }
}

/// Groebner basis of the graph of `M`, reusable across many lifts.
pub struct Augmented {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    gb: GroebnerBasis,
    ideal: GroebnerBasis,
}

impl Augmented {
    pub fn new(m: &FreeModuleMap, budget: &Budget) -> Result<Self> {
        let ring = m.ring().clone();
        let (rows, cols) = (m.rows(), m.cols());
        let order = ring.order();
        let n = ring.nvars();
        let mut gens = Vec::with_capacity(cols + (rows + cols) * ring.relations().len());
        for j in 0..cols {
            let mut v = Vector::from_dense(&m.column(j), order);
            let e = Vector::from_dense_offset(&[Polynomial::one(n)], rows + j, order);
            v.terms.extend(e.terms);
            gens.push(v);
        }
        for c in 0..rows + cols {
            for r in ring.relations() {
                gens.push(Vector::from_dense_offset(std::slice::from_ref(r), c, order));
            }
        }
        let gb = GroebnerBasis::from_vectors(&ring, rows + cols, gens, budget)?;
        let ideal = GroebnerBasis::new(&ring, 1, &[], budget)?;
        Ok(Augmented { ring, rows, cols, gb, ideal })
    }

    /// Generators of `ker M` as the columns of a `cols x k` matrix.
    pub fn syzygies(&self) -> FreeModuleMap {
        let n = self.ring.nvars();
        let cols: Vec<Vec<Polynomial>> = self
            .gb
            .vectors()
            .iter()
            .filter(|v| v.terms[0].comp >= self.rows)
            .map(|v| v.dense_range(self.rows, self.rows + self.cols, n))
            .filter(|c| !c.iter().all(|p| self.in_ideal(p)))
            .collect();
        FreeModuleMap::from_columns(&self.ring, self.cols, &cols)
    }

    fn in_ideal(&self, p: &Polynomial) -> bool {
        p.is_zero() || self.ideal.contains(std::slice::from_ref(p))
    }

    pub fn lift(&self, v: &[Polynomial]) -> Lift {
        assert_eq!(v.len(), self.rows, "right-hand side has the wrong length");
        let n = self.ring.nvars();
        let r = self.gb.reduce_vector(Vector::from_dense(v, self.ring.order()));
        let top = r.dense_range(0, self.rows, n);
        if top.iter().all(Polynomial::is_zero) {
            let u = r.dense_range(self.rows, self.rows + self.cols, n).into_iter().map(|p| -p).collect();
            Lift::Solution(u)
        } else {
            Lift::NoSolution { residue: top }
        }
    }
}

pub fn syzygies(m: &FreeModuleMap, budget: &Budget) -> Result<FreeModuleMap> {
    Ok(Augmented::new(m, budget)?.syzygies())
}

/// Solves `m u = v` modulo the ring relations.
pub fn lift(m: &FreeModuleMap, v: &[Polynomial], budget: &Budget) -> Result<Lift> {
    if v.len() != m.rows() {
        return Err(Error::Shape(format!("vector of length {} against {} rows", v.len(), m.rows())));
    }
    Ok(Augmented::new(m, budget)?.lift(v))
}

/// Reduces every entry modulo the ring relations.
pub fn reduce_entries(m: &FreeModuleMap, budget: &Budget) -> Result<FreeModuleMap> {
    if !m.ring().has_relations() {
        return Ok(m.clone());
    }
    let ideal = GroebnerBasis::new(m.ring(), 1, &[], budget)?;
    Ok(m.map(|p| ideal.normal_form(std::slice::from_ref(p)).pop().unwrap()))
}

/// `ker(d_out) / im(d_in)` presented on the generators of `ker(d_out)`.
pub fn homology(d_in: &FreeModuleMap, d_out: &FreeModuleMap, budget: &Budget) -> Result<ModulePresentation> {
    if d_in.ring() != d_out.ring() {
        return Err(Error::RingMismatch("homology of maps over different rings".into()));
    }
    let prod = reduce_entries(&d_out.mul(d_in)?, budget)?;
    if let Some((i, j, p)) = prod.entries().find(|(_, _, p)| !p.is_zero()) {
        return Err(Error::NonzeroComposition { row: i, col: j, value: prod.ring().format(p) });
    }
    let ring = d_in.ring();
    let kernel = syzygies(d_out, budget)?;
    let aug = Augmented::new(&kernel, budget)?;
    let mut rel_cols = Vec::with_capacity(d_in.cols());
    for j in 0..d_in.cols() {
        match aug.lift(&d_in.column(j)) {
            Lift::Solution(u) => rel_cols.push(u),
            Lift::NoSolution { .. } => unreachable!("image lies in the kernel"),
        }
    }
    let m = kernel.cols();
    let lifted = FreeModuleMap::from_columns(ring, m, &rel_cols);
    let relations = lifted.hstack(&aug.syzygies())?;
    Ok(ModulePresentation::new(ring, m, relations))
}

/// `(N : e_c)` for every generator, intersected: the annihilator ideal of `M`.
pub fn annihilator(m: &ModulePresentation, budget: &Budget) -> Result<GroebnerBasis> {
    let ring = m.ring();
    let g = m.generators();
    let rel = m.relations();
    let mut acc: Option<Vec<Polynomial>> = None;
    for c in 0..g {
        let mut e = FreeModuleMap::zeros(ring, g, 1);
        e.set(c, 0, ring.one());
        let syz = syzygies(&e.hstack(rel)?, budget)?;
        let quotient: Vec<Polynomial> = syz.row(0);
        acc = Some(match acc {
            None => quotient,
            Some(prev) => intersect(ring, &prev, &quotient, budget)?,
        });
    }
    let gens: Vec<Vec<Polynomial>> = acc.unwrap_or_else(|| vec![ring.one()]).into_iter().map(|p| vec![p]).collect();
    GroebnerBasis::new(ring, 1, &gens, budget)
}

/// Generators of `(a) ∩ (b)`.
pub fn intersect(ring: &Arc<Ring>, a: &[Polynomial], b: &[Polynomial], budget: &Budget) -> Result<Vec<Polynomial>> {
    let (na, nb) = (a.len(), b.len());
    let mut m = FreeModuleMap::zeros(ring, 2, 1 + na + nb);
    m.set(0, 0, ring.one());
    m.set(1, 0, ring.one());
    for (k, p) in a.iter().enumerate() {
        m.set(0, 1 + k, p.clone());
    }
    for (k, p) in b.iter().enumerate() {
        m.set(1, 1 + na + k, p.clone());
    }
    Ok(syzygies(&m, budget)?.row(0))
}

/// Whether the column spans of `a` and `b` agree as submodules of `R^rows`.
pub fn same_image(a: &FreeModuleMap, b: &FreeModuleMap, budget: &Budget) -> Result<bool> {
    if a.rows() != b.rows() {
        return Ok(false);
    }
    let ga = GroebnerBasis::new(a.ring(), a.rows(), &a.columns(), budget)?;
    let gb = GroebnerBasis::new(b.ring(), b.rows(), &b.columns(), budget)?;
    Ok(ga.elements() == gb.elements())
}
