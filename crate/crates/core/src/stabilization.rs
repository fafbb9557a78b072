//! Matrix factorizations built from modules on the zero fibre.

use std::sync::Arc;

use crate::curved::MatrixFactorization;
use crate::error::{Error, Result};
use crate::exterior::ExteriorBasis;
use crate::groebner::{same_image, Augmented, Budget, Lift, ModulePresentation};
use crate::matrix::FreeModuleMap;
use crate::poly::{variable_decompose, Factor, Monomial, Polynomial, ProductRing, Rational, Ring};

/// `W = sum a_i b_i` turned into the factorization on `Lambda(e_1..e_k) (x) A`
/// with differential `sum a_i iota_i + sum b_i e_i ^`. The even part is
/// `Lambda^even`, so `p1` maps odd exterior degrees to even ones.
pub fn koszul_mf(ring: &Arc<Ring>, pairs: &[(Polynomial, Polynomial)]) -> Result<MatrixFactorization> {
    let basis = ExteriorBasis::new(pairs.len());
    let even = basis.parity(false);
    let odd = basis.parity(true);
    let pos =
        |k: usize| -> usize { even.iter().position(|&e| e == k).or_else(|| odd.iter().position(|&o| o == k)).unwrap() };
    let mut p1 = FreeModuleMap::zeros(ring, even.len(), odd.len());
    let mut p0 = FreeModuleMap::zeros(ring, odd.len(), even.len());
    for (i, (a, b)) in pairs.iter().enumerate() {
        for (src_parity, src) in [(false, &even), (true, &odd)] {
            for (col, &k) in src.iter().enumerate() {
                let mut put = |sign: i64, target: usize, coeff: &Polynomial| {
                    let m = if src_parity { &mut p1 } else { &mut p0 };
                    let row = pos(target);
                    let val = m.get(row, col) + &coeff.scale(&Rational::from_integer(sign.into()));
                    m.set(row, col, val);
                };
                if let Some((s, t)) = basis.contract(i, k) {
                    put(s, t, a);
                }
                if let Some((s, t)) = basis.wedge(i, k) {
                    put(s, t, b);
                }
            }
        }
    }
    let w = pairs.iter().fold(ring.zero(), |acc, (a, b)| acc + a * b);
    MatrixFactorization::new(ring, w, p1, p0)
}

/// Stabilization of the residue field at the origin, from the splitting of
/// [`variable_decompose`]; only the variables with a nonzero quotient appear.
pub fn koszul_stab(ring: &Arc<Ring>, w: &Polynomial) -> Result<MatrixFactorization> {
    let n = ring.nvars();
    let pairs: Vec<(Polynomial, Polynomial)> =
        variable_decompose(w)?.into_iter().map(|(i, wi)| (Polynomial::var(n, i), wi)).collect();
    koszul_mf(ring, &pairs)
}

/// `W_i(x, y)` with `W(x) - W(y) = sum (x_i - y_i) W_i`, telescoping one
/// variable at a time: `W_i = (W(y_<i, x_i, x_>i) - W(y_<=i, x_>i)) / (x_i - y_i)`.
pub fn difference_quotients(prod: &ProductRing, w: &Polynomial) -> Result<Vec<Polynomial>> {
    let n = prod.left().nvars();
    if w.nvars() != n || prod.right().nvars() != n {
        return Err(Error::RingMismatch("the product ring is not a doubling of W's ring".into()));
    }
    let total = prod.ring().nvars();
    let mut out = vec![Polynomial::zero(total); n];
    for (m, c) in w.terms() {
        for (i, qi) in out.iter_mut().enumerate() {
            let k = m.exponent(i);
            if k == 0 {
                continue;
            }
            let mut base = vec![0u32; total];
            for j in 0..n {
                let e = m.exponent(j);
                match j.cmp(&i) {
                    std::cmp::Ordering::Less => base[n + j] = e,
                    std::cmp::Ordering::Greater => base[j] = e,
                    std::cmp::Ordering::Equal => {}
                }
            }
            // (x^k - y^k) / (x - y) = sum_{a + b = k - 1} x^a y^b
            for a in 0..k {
                let mut exps = base.clone();
                exps[i] = a;
                exps[n + i] = k - 1 - a;
                *qi = &*qi + &Polynomial::term(Monomial::from_exponents(&exps), c.clone());
            }
        }
    }
    Ok(out)
}

/// Koszul factorization of `W(x) - W(y)` on the sequence `(x_i - y_i)` over
/// `A (x) A`, stabilizing the diagonal.
pub fn diagonal_mf(prod: &ProductRing, w: &Polynomial) -> Result<MatrixFactorization> {
    let c = w.constant_term();
    if !num_traits::Zero::is_zero(&c) {
        return Err(Error::NonzeroConstant(c.to_string()));
    }
    let n = prod.left().nvars();
    let ring = prod.ring();
    let quotients = difference_quotients(prod, w)?;
    let pairs: Vec<(Polynomial, Polynomial)> = quotients
        .into_iter()
        .enumerate()
        .map(|(i, wi)| (Polynomial::var(2 * n, i) - Polynomial::var(2 * n, n + i), wi))
        .collect();
    let mf = koszul_mf(ring, &pairs)?;
    debug_assert_eq!(mf.curvature(), &(prod.pullback(w, Factor::First)? - prod.pullback(w, Factor::Second)?));
    Ok(mf)
}

/// The factorization `(q1, q0)` of a module `F` on the zero fibre, where `q1`
/// presents `F` over `A` and `q0` solves `q1 q0 = W id`.
///
/// `F` may be given over any ring on the same variables as `q1`; its relations
/// together with `W` must span the same submodule as `q1` together with `W`.
pub fn stabilize(
    f: &ModulePresentation,
    q1: &FreeModuleMap,
    w: &Polynomial,
    budget: &Budget,
) -> Result<MatrixFactorization> {
    let ring = q1.ring();
    if f.ring().vars() != ring.vars() {
        return Err(Error::RingMismatch("module and resolution use different variables".into()));
    }
    if q1.rows() != f.generators() {
        return Err(Error::Shape(format!(
            "resolution has {} rows but the module has {} generators",
            q1.rows(),
            f.generators()
        )));
    }
    let g = f.generators();
    let mut extra = FreeModuleMap::scalar(ring, g, w);
    for r in f.ring().relations() {
        extra = extra.hstack(&FreeModuleMap::scalar(ring, g, r))?;
    }
    let given = f.relations().with_ring(ring)?.hstack(&extra)?;
    if !same_image(&given, &q1.hstack(&extra)?, budget)? {
        return Err(Error::PresentationMismatch("coker(q1) differs from the module modulo W".into()));
    }

    let aug = Augmented::new(q1, budget)?;
    let mut cols = Vec::with_capacity(g);
    for j in 0..g {
        let mut rhs = vec![ring.zero(); g];
        rhs[j] = w.clone();
        match aug.lift(&rhs) {
            Lift::Solution(u) => cols.push(u),
            Lift::NoSolution { residue } => {
                let shown: Vec<String> = residue.iter().map(|p| ring.format(p)).collect();
                return Err(Error::LiftFailed(format!(
                    "W e_{j} is not in the image of q1 (residue [{}])",
                    shown.join(", ")
                )));
            }
        }
    }
    let q0 = FreeModuleMap::from_columns(ring, q1.cols(), &cols);
    MatrixFactorization::new(ring, w.clone(), q1.clone(), q0)
}
