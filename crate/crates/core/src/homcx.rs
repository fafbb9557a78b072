//! The two-periodic complex `Hom(P, Q)` with `d f = q f - (-1)^|f| f p`, and Ext.
//!
//! A block `X: P_a -> Q_b` is flattened column-major, entry `(t, s)` at index
//! `s * rows(X) + t`, so that `vec(A X B) = (B^t (x) A) vec(X)`. The even piece
//! is `[Hom(P0, Q0); Hom(P1, Q1)]` and the odd piece `[Hom(P0, Q1); Hom(P1, Q0)]`,
//! matching the block order of [`CurvedMap`].

use std::sync::Arc;

use crate::complex::{Z2Complex, Z2Homology};
use crate::curved::{CurvedMap, MatrixFactorization, Parity};
use crate::error::{Error, Result};
use crate::groebner::{lift, Budget, Lift, QDim};
use crate::matrix::FreeModuleMap;
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComplex {
    source: MatrixFactorization,
    target: MatrixFactorization,
    complex: Z2Complex,
}

fn block_sizes(p: &MatrixFactorization, q: &MatrixFactorization, parity: Parity) -> [(usize, usize); 2] {
    let (pe, po, qe, qo) = (p.rank_even(), p.rank_odd(), q.rank_even(), q.rank_odd());
    match parity {
        Parity::Even => [(qe, pe), (qo, po)],
        Parity::Odd => [(qo, pe), (qe, po)],
    }
}

/// `Hom(P, Q)`; `P` and `Q` must share ring and curvature.
pub fn hom_complex(p: &MatrixFactorization, q: &MatrixFactorization) -> Result<HomComplex> {
    p.same_category(q)?;
    let ring = p.ring();
    let (pe, po, qe, qo) = (p.rank_even(), p.rank_odd(), q.rank_even(), q.rank_odd());
    let id = |n| FreeModuleMap::identity(ring, n);
    let k = |a: &FreeModuleMap, b: &FreeModuleMap| a.kron(b).expect("same ring");

    // even -> odd: (q0 f00 - f11 p0, q1 f11 - f00 p1)
    let d_even = FreeModuleMap::blocks(&[
        vec![&k(&id(pe), q.p0()), &k(&p.p0().transpose(), &id(qo)).neg()],
        vec![&k(&p.p1().transpose(), &id(qe)).neg(), &k(&id(po), q.p1())],
    ])?;
    // odd -> even: (q1 g01 + g10 p0, q0 g10 + g01 p1)
    let d_odd = FreeModuleMap::blocks(&[
        vec![&k(&id(pe), q.p1()), &k(&p.p0().transpose(), &id(qe))],
        vec![&k(&p.p1().transpose(), &id(qo)), &k(&id(po), q.p0())],
    ])?;
    let complex = Z2Complex::new(d_even, d_odd, &Budget::default())?;
    Ok(HomComplex { source: p.clone(), target: q.clone(), complex })
}

impl HomComplex {
    pub fn source(&self) -> &MatrixFactorization {
        &self.source
    }

    pub fn target(&self) -> &MatrixFactorization {
        &self.target
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.complex.ring()
    }

    pub fn rank(&self, p: Parity) -> usize {
        self.complex.rank(p)
    }

    /// The differential leaving the given parity.
    pub fn d(&self, from: Parity) -> &FreeModuleMap {
        self.complex.d(from)
    }

    pub fn complex(&self) -> &Z2Complex {
        &self.complex
    }

    pub fn flatten(&self, f: &CurvedMap) -> Result<Vec<Polynomial>> {
        if f.source() != &self.source || f.target() != &self.target {
            return Err(Error::Shape("map does not belong to this Hom complex".into()));
        }
        let mut out = Vec::with_capacity(self.rank(f.parity()));
        for b in f.blocks() {
            for s in 0..b.cols() {
                for t in 0..b.rows() {
                    out.push(b.get(t, s).clone());
                }
            }
        }
        Ok(out)
    }

    pub fn unflatten(&self, parity: Parity, v: &[Polynomial]) -> Result<CurvedMap> {
        if v.len() != self.rank(parity) {
            return Err(Error::Shape(format!("vector of length {} in a piece of rank {}", v.len(), self.rank(parity))));
        }
        let ring = self.ring();
        let mut offset = 0;
        let blocks = block_sizes(&self.source, &self.target, parity).map(|(rows, cols)| {
            let mut b = FreeModuleMap::zeros(ring, rows, cols);
            for s in 0..cols {
                for t in 0..rows {
                    b.set(t, s, v[offset + s * rows + t].clone());
                }
            }
            offset += rows * cols;
            b
        });
        CurvedMap::new(&self.source, &self.target, parity, blocks)
    }

    /// Whether a closed map is `d` of something.
    pub fn is_coboundary(&self, f: &CurvedMap, budget: &Budget) -> Result<bool> {
        let v = self.flatten(f)?;
        let d = self.d(f.parity().flip());
        Ok(matches!(lift(d, &v, budget)?, Lift::Solution(_)))
    }

    pub fn homology(&self, budget: &Budget) -> Result<Z2Homology> {
        self.complex.homology(budget)
    }
}

/// `Ext^even` and `Ext^odd` of `(P, Q)` as presentations and Q-dimensions.
pub fn ext(p: &MatrixFactorization, q: &MatrixFactorization, budget: &Budget) -> Result<Z2Homology> {
    hom_complex(p, q)?.homology(budget)
}

pub fn ext_dims(p: &MatrixFactorization, q: &MatrixFactorization, budget: &Budget) -> Result<[QDim; 2]> {
    Ok(ext(p, q, budget)?.dims)
}

/// Product of cocycles `a: Q -> R` and `b: P -> Q`.
pub fn compose(a: &CurvedMap, b: &CurvedMap) -> Result<CurvedMap> {
    for (name, f) in [("left factor", a), ("right factor", b)] {
        if !f.is_closed() {
            return Err(Error::NotCocycle(format!("the {name} has nonzero differential")));
        }
    }
    a.compose(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilization::koszul_stab;

    fn mat(ring: &Arc<Ring>, rows: &[&[&str]]) -> FreeModuleMap {
        let rows = rows.iter().map(|r| r.iter().map(|s| ring.parse(s).unwrap()).collect()).collect();
        FreeModuleMap::from_rows(ring, rows).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    fn kstab(vars: &[&str], w: &str) -> MatrixFactorization {
        let r = Ring::polynomial(vars).unwrap();
        koszul_stab(&r, &r.parse(w).unwrap()).unwrap()
    }

    #[test]
    fn end_complex_of_x_squared() {
        let p = kstab(&["x"], "x^2");
        let r = p.ring().clone();
        let h = hom_complex(&p, &p).unwrap();
        assert_eq!((h.rank(Parity::Even), h.rank(Parity::Odd)), (2, 2));
        assert_eq!(h.d(Parity::Even), &mat(&r, &[&["x", "-x"], &["-x", "x"]]));
        assert_eq!(h.d(Parity::Odd), &mat(&r, &[&["x", "x"], &["x", "x"]]));
        assert_eq!(ext_dims(&p, &p, &b()).unwrap(), [QDim::Finite(1), QDim::Finite(1)]);
    }

    #[test]
    fn flattening_matches_the_map_differential() {
        let p = kstab(&["x", "y"], "x^3 + y^2*x");
        let q = p.shift();
        let h = hom_complex(&p, &q).unwrap();
        let r = p.ring().clone();
        for parity in [Parity::Even, Parity::Odd] {
            let v: Vec<Polynomial> =
                (0..h.rank(parity)).map(|k| r.parse(&format!("{k}*x + y^{}", k % 3)).unwrap()).collect();
            let f = h.unflatten(parity, &v).unwrap();
            assert_eq!(h.flatten(&f).unwrap(), v);
            let df = h.d(parity).apply(&v);
            assert_eq!(h.flatten(&f.differential()).unwrap(), df);
        }
    }

    #[test]
    fn curvature_mismatch_is_rejected() {
        let r = Ring::polynomial(&["x"]).unwrap();
        let p = koszul_stab(&r, &r.parse("x^2").unwrap()).unwrap();
        let q = koszul_stab(&r, &r.parse("x^3").unwrap()).unwrap();
        assert!(matches!(hom_complex(&p, &q), Err(Error::CurvatureMismatch { .. })));
    }

    #[test]
    fn shift_swaps_parities() {
        let p = kstab(&["x"], "x^3");
        let e = ext_dims(&p, &p, &b()).unwrap();
        let s = ext_dims(&p, &p.shift(), &b()).unwrap();
        assert_eq!(s, [e[1], e[0]]);
    }

    #[test]
    fn contractible_cones_have_no_ext() {
        let p = kstab(&["x"], "x^3");
        let c = CurvedMap::identity(&p).cone().unwrap();
        assert_eq!(ext_dims(&c, &p, &b()).unwrap(), [QDim::Finite(0), QDim::Finite(0)]);
        assert_eq!(ext_dims(&p, &c, &b()).unwrap(), [QDim::Finite(0), QDim::Finite(0)]);
        // its cokernel is free of rank one over A/(W) = Q[x]/(x^3)
        let coker = c.cokernel().unwrap();
        assert_eq!(coker.q_dimension(&b()).unwrap(), QDim::Finite(3));
    }

    #[test]
    fn identity_class_is_nonzero() {
        let p = kstab(&["x", "y"], "x^2 + y^2");
        let h = hom_complex(&p, &p).unwrap();
        let id = CurvedMap::identity(&p);
        assert!(id.is_closed());
        assert!(!h.is_coboundary(&id, &b()).unwrap());
        let c = CurvedMap::identity(&p).cone().unwrap();
        let hc = hom_complex(&c, &c).unwrap();
        assert!(hc.is_coboundary(&CurvedMap::identity(&c), &b()).unwrap());
    }

    #[test]
    fn clifford_relation() {
        let p = kstab(&["x"], "x^2");
        let r = p.ring().clone();
        let theta = CurvedMap::new(&p, &p, Parity::Odd, [mat(&r, &[&["1"]]), mat(&r, &[&["-1"]])]).unwrap();
        let sq = compose(&theta, &theta).unwrap();
        assert_eq!(sq.parity(), Parity::Even);
        assert_eq!(sq, CurvedMap::identity(&p).scale(&-r.one()));
        assert_eq!(compose(&CurvedMap::identity(&p), &theta).unwrap(), theta);
        let open = CurvedMap::new(&p, &p, Parity::Odd, [mat(&r, &[&["1"]]), mat(&r, &[&["1"]])]).unwrap();
        assert!(matches!(compose(&open, &theta), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn products_respect_coboundaries() {
        // perturbing a cocycle by d(h) changes the product by a coboundary
        let p = kstab(&["x"], "x^3");
        let r = p.ring().clone();
        let h = hom_complex(&p, &p).unwrap();
        let theta = CurvedMap::new(&p, &p, Parity::Odd, [mat(&r, &[&["-x"]]), mat(&r, &[&["1"]])]).unwrap();
        assert!(theta.is_closed());
        let g = CurvedMap::new(&p, &p, Parity::Even, [mat(&r, &[&["x + 2"]]), mat(&r, &[&["x^2"]])]).unwrap();
        let perturbed = theta.add(&g.differential()).unwrap();
        let diff =
            compose(&perturbed, &theta).unwrap().add(&compose(&theta, &theta).unwrap().scale(&-r.one())).unwrap();
        assert!(h.is_coboundary(&diff, &b()).unwrap());
    }
}
