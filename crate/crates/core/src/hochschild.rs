//! Hochschild invariants of `MF(A, W)` for `A = Q[x_1..x_n]`: the polyvector
//! complex `(Lambda T, iota_dW)`, the forms complex `(Omega, dW ^)`, and the
//! self-Ext of the stabilized diagonal.

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cech::{cech_hyper_complex, CechCover};
use crate::complex::{Z2Complex, Z2Homology};
use crate::curved::{MatrixFactorization, Parity};
use crate::error::{Error, Result};
use crate::exterior::ExteriorBasis;
use crate::groebner::{Budget, ModulePresentation, QDim};
use crate::homcx::ext;
use crate::matrix::FreeModuleMap;
use crate::poly::{Polynomial, ProductRing, Rational, Ring};
use crate::stabilization::diagonal_mf;

fn gradient(ring: &Arc<Ring>, w: &Polynomial) -> Result<Vec<Polynomial>> {
    if w.nvars() != ring.nvars() {
        return Err(Error::RingMismatch("W lives in another ring".into()));
    }
    Ok((0..ring.nvars()).map(|i| w.partial_derivative(i)).collect())
}

/// Folds a graded operator on the exterior algebra into the two-periodic complex
/// `Lambda^even <-> Lambda^odd`; `op(i, k)` is the image of `e_k` under the
/// `i`-th elementary operator.
fn fold(
    ring: &Arc<Ring>,
    coeffs: &[Polynomial],
    op: impl Fn(&ExteriorBasis, usize, usize) -> Option<(i64, usize)>,
) -> Result<Z2Complex> {
    let basis = ExteriorBasis::new(coeffs.len());
    let parts = [basis.parity(false), basis.parity(true)];
    let pos = |k: usize| parts.iter().find_map(|p| p.iter().position(|&x| x == k)).unwrap();
    let mut d = [
        FreeModuleMap::zeros(ring, parts[1].len(), parts[0].len()),
        FreeModuleMap::zeros(ring, parts[0].len(), parts[1].len()),
    ];
    for (from, part) in parts.iter().enumerate() {
        for (col, &k) in part.iter().enumerate() {
            for (i, c) in coeffs.iter().enumerate() {
                if let Some((sign, t)) = op(&basis, i, k) {
                    let row = pos(t);
                    let v = d[from].get(row, col) + &c.scale(&Rational::from_integer(sign.into()));
                    d[from].set(row, col, v);
                }
            }
        }
    }
    let [d0, d1] = d;
    Z2Complex::new(d0, d1, &Budget::default())
}

/// `Lambda^q T` with contraction by `dW`, folded by `q mod 2`.
pub fn polyvector_complex(ring: &Arc<Ring>, w: &Polynomial) -> Result<Z2Complex> {
    fold(ring, &gradient(ring, w)?, |b, i, k| b.contract(i, k))
}

/// `Omega^q` with `dW ^`, folded by `q mod 2`.
pub fn forms_complex(ring: &Arc<Ring>, w: &Polynomial) -> Result<Z2Complex> {
    fold(ring, &gradient(ring, w)?, |b, i, k| b.wedge(i, k))
}

/// `dim_Q Q[x] / (d_1 W, .., d_n W)`.
pub fn milnor_number(ring: &Arc<Ring>, w: &Polynomial, budget: &Budget) -> Result<QDim> {
    let grad = gradient(ring, w)?;
    let rel = FreeModuleMap::from_rows_shaped(ring, 1, grad.len(), vec![grad])?;
    ModulePresentation::new(ring, 1, rel).q_dimension(budget)
}

pub fn hh_cohomology(w: &Polynomial, cover: &CechCover, budget: &Budget) -> Result<Z2Homology> {
    let c = polyvector_complex(cover.ambient(), w)?;
    cech_hyper_complex(&c, cover, 1, budget)
}

pub fn hh_homology(w: &Polynomial, cover: &CechCover, budget: &Budget) -> Result<Z2Homology> {
    let c = forms_complex(cover.ambient(), w)?;
    cech_hyper_complex(&c, cover, 1, budget)
}

/// `Ext(Delta, Delta)` over `A (x) A` for the stabilized diagonal of `W`.
pub fn hh_via_diagonal(ring: &Arc<Ring>, w: &Polynomial, budget: &Budget) -> Result<Z2Homology> {
    let prod = ProductRing::doubled(ring)?;
    let delta = diagonal_mf(&prod, w)?;
    ext(&delta, &delta, budget)
}

#[derive(Clone, Debug)]
pub struct HhComparison {
    pub polyvector: Z2Homology,
    pub diagonal: Z2Homology,
    pub milnor: QDim,
    pub polyvector_time: Duration,
    pub diagonal_time: Duration,
}

impl HhComparison {
    pub fn pass(&self) -> bool {
        self.polyvector.dims == self.diagonal.dims
    }
}

/// Computes the polyvector side over `cover` and the diagonal side on the
/// whole affine space, concurrently.
pub fn compare_hh(w: &Polynomial, cover: &CechCover, budget: &Budget) -> Result<HhComparison> {
    let ring = cover.ambient();
    let timed = |f: &dyn Fn() -> Result<Z2Homology>| -> Result<(Z2Homology, Duration)> {
        let start = Instant::now();
        let h = f()?;
        Ok((h, start.elapsed()))
    };
    let (poly, diag, milnor) = std::thread::scope(|s| {
        let diag = s.spawn(|| timed(&|| hh_via_diagonal(ring, w, budget)));
        let milnor = s.spawn(|| milnor_number(ring, w, budget));
        let poly = timed(&|| hh_cohomology(w, cover, budget));
        (poly, diag.join().expect("diagonal worker panicked"), milnor.join().expect("milnor worker panicked"))
    });
    let ((polyvector, polyvector_time), (diagonal, diagonal_time)) = (poly?, diag?);
    Ok(HhComparison { polyvector, diagonal, milnor: milnor?, polyvector_time, diagonal_time })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyReport {
    pub n: usize,
    pub ext_pq: [QDim; 2],
    pub ext_qp: [QDim; 2],
}

impl CyReport {
    /// `dim Ext^i(P, Q) = dim Ext^(i + n)(Q, P)` for both parities.
    pub fn pass(&self) -> bool {
        [Parity::Even, Parity::Odd].iter().all(|&i| {
            let j = i + Parity::of(self.n);
            self.ext_pq[i.index()] == self.ext_qp[j.index()]
        })
    }
}

pub fn cy_symmetry_check(
    p: &MatrixFactorization,
    q: &MatrixFactorization,
    n: usize,
    budget: &Budget,
) -> Result<CyReport> {
    let (pq, qp) = std::thread::scope(|s| {
        let qp = s.spawn(|| ext(q, p, budget));
        (ext(p, q, budget), qp.join().expect("ext worker panicked"))
    });
    Ok(CyReport { n, ext_pq: pq?.dims, ext_qp: qp?.dims })
}
