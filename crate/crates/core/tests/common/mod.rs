//! Shared helpers for the integration tests: seeded random inputs and a dense
//! linear algebra oracle over Q that shares no code with the Groebner engine.
#![allow(dead_code)]

use std::sync::Arc;

use mfcat::poly::Monomial;
use mfcat::{FreeModuleMap, Polynomial, Rational, Ring};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// All exponent vectors in `n` variables of total degree at most `d`,
/// ordered by degree and then lexicographically.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=d {
        out.extend(monomials_of_degree(n, deg));
    }
    out
}

pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, terms: usize, constant: bool) -> Polynomial {
    let mons = monomials_up_to(n, max_deg);
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let e = &mons[rng.gen_range(0..mons.len())];
        if !constant && e.iter().all(|&x| x == 0) {
            continue;
        }
        let c = rat(rng.gen_range(-3..=3));
        p = p + Polynomial::term(Monomial::from_exponents(e), c);
    }
    p
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    ring: &Arc<Ring>,
    rows: usize,
    cols: usize,
    max_deg: u32,
    terms: usize,
) -> FreeModuleMap {
    let mut m = FreeModuleMap::zeros(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_poly(rng, ring.nvars(), max_deg, terms, true));
        }
    }
    m
}

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = Rational::one() / rows[r][c].clone();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone() * inv.clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= f.clone() * y.clone();
                }
            }
        }
        r += 1;
    }
    r
}

/// A basis of the right nullspace of a dense rational matrix.
pub fn nullspace(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}

/// Coefficient of the monomial `e` in `p`.
pub fn coeff(p: &Polynomial, e: &[u32]) -> Rational {
    p.coefficient(&Monomial::from_exponents(e))
}

/// `M` over `Q[x]/(x^k)` as a dense Q-matrix on the basis `x^a e_j`, `a < k`.
pub fn truncated_matrix(m: &FreeModuleMap, k: u32) -> Vec<Vec<Rational>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = vec![vec![Rational::zero(); cols * k as usize]; rows * k as usize];
    for j in 0..cols {
        for a in 0..k {
            for i in 0..rows {
                let e = m.get(i, j);
                for b in 0..k {
                    if b < a {
                        continue;
                    }
                    // x^a * e contributes coeff(e, x^(b - a)) to x^b
                    let c = coeff(e, &[b - a]);
                    out[i * k as usize + b as usize][j * k as usize + a as usize] = c;
                }
            }
        }
    }
    out
}

/// Q-dimension of `ker(d_out) / im(d_in)` for maps over `Q[x]/(x^k)`.
pub fn dense_homology_dim(d_in: &FreeModuleMap, d_out: &FreeModuleMap, k: u32) -> usize {
    let middle = d_out.cols() * k as usize;
    middle - rank(truncated_matrix(d_out, k)) - rank(truncated_matrix(d_in, k))
}

/// `dim_Q Q[x] / I` for an ideal generated by homogeneous polynomials, from the
/// Hilbert function computed degree by degree. `None` if `I_d != R_d` for every
/// `d <= max_deg`.
pub fn homogeneous_quotient_dim(n: usize, gens: &[Polynomial], max_deg: u32) -> Option<usize> {
    let mut total = 0;
    for d in 0..=max_deg {
        let basis = monomials_of_degree(n, d);
        let mut span = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let gd = g.total_degree().unwrap();
            if gd > d {
                continue;
            }
            for m in monomials_of_degree(n, d - gd) {
                let shifted = g.mul_monomial(&Monomial::from_exponents(&m), &Rational::one());
                span.push(basis.iter().map(|e| coeff(&shifted, e)).collect::<Vec<_>>());
            }
        }
        let r = if span.is_empty() { 0 } else { rank(span) };
        let missing = basis.len() - r;
        if missing == 0 && d > 0 {
            return Some(total);
        }
        total += missing;
    }
    None
}

/// A random idempotent constant matrix `U diag(1..1, 0..0) U^-1` with `U`
/// unimodular, and its complement `I - P`.
fn random_projection(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, n: usize) -> (FreeModuleMap, FreeModuleMap) {
    let mut lower = FreeModuleMap::identity(ring, n);
    let mut upper = FreeModuleMap::identity(ring, n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, ring.one().scale(&rat(rng.gen_range(-2..=2))));
            upper.set(j, i, ring.one().scale(&rat(rng.gen_range(-2..=2))));
        }
    }
    let u = lower.mul(&upper).unwrap();
    // inverses of unitriangular matrices by back substitution over Q
    let inv_lower = unitriangular_inverse(&lower, true);
    let inv_upper = unitriangular_inverse(&upper, false);
    let u_inv = inv_upper.mul(&inv_lower).unwrap();
    let keep = rng.gen_range(0..=n);
    let mut d = FreeModuleMap::zeros(ring, n, n);
    for i in 0..keep {
        d.set(i, i, ring.one());
    }
    let p = u.mul(&d).unwrap().mul(&u_inv).unwrap();
    let q = FreeModuleMap::identity(ring, n).sub(&p).unwrap();
    (p, q)
}

fn unitriangular_inverse(m: &FreeModuleMap, lower: bool) -> FreeModuleMap {
    let n = m.rows();
    let ring = m.ring().clone();
    let mut inv = FreeModuleMap::identity(&ring, n);
    let order: Vec<usize> = if lower { (0..n).collect() } else { (0..n).rev().collect() };
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            // row i of inv = e_i - sum_j m[i][j] * row j of inv
            let c = m.get(i, j).clone();
            for k in 0..n {
                let v = inv.get(i, k) - &(&c * inv.get(j, k));
                inv.set(i, k, v);
            }
        }
    }
    inv
}

/// A pair `(d_in, d_out)` over `Q[x]/(x^k)` with `d_out d_in = 0`, built from
/// a constant idempotent splitting and powers of `x` that multiply past `k`.
pub fn random_truncated_complex(rng: &mut ChaCha8Rng, k: u32) -> (Arc<Ring>, FreeModuleMap, FreeModuleMap) {
    let ring = Ring::with_relation_literals(&["x"], &[format!("x^{k}").as_str()], Default::default()).unwrap();
    let (n0, n1, n2) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
    let (p, q) = random_projection(rng, &ring, n1);
    let a = rng.gen_range(0..=k);
    let b = k - a;
    let xa = ring.parse(&format!("x^{a}")).unwrap();
    let xb = ring.parse(&format!("x^{b}")).unwrap();
    let d_in = q.mul(&random_matrix(rng, &ring, n1, n0, 1, 2)).unwrap().map(|e| e * &xa);
    let bp = random_matrix(rng, &ring, n2, n1, 1, 2).mul(&p).unwrap();
    let bq = random_matrix(rng, &ring, n2, n1, 1, 2).mul(&q).unwrap().map(|e| e * &xb);
    let d_out = bp.add(&bq).unwrap();
    (ring, d_in, d_out)
}

/// Checks that every syzygy of `m` of entry degree at most `deg`, found by
/// dense linear algebra, lies in the module generated by `syz`.
pub fn syzygies_complete(m: &FreeModuleMap, syz: &FreeModuleMap, deg: u32) -> bool {
    let ring = m.ring();
    let n = ring.nvars();
    let unknowns = monomials_up_to(n, deg);
    let entry_deg = m.entries().filter_map(|(_, _, e)| e.total_degree()).max().unwrap_or(0);
    let targets = monomials_up_to(n, deg + entry_deg);
    let cols = m.cols() * unknowns.len();
    let mut rows = Vec::new();
    for i in 0..m.rows() {
        for t in &targets {
            let mut row = Vec::with_capacity(cols);
            for j in 0..m.cols() {
                for u in &unknowns {
                    let shifted = m.get(i, j).mul_monomial(&Monomial::from_exponents(u), &Rational::one());
                    row.push(coeff(&shifted, t));
                }
            }
            rows.push(row);
        }
    }
    let gb = mfcat::GroebnerBasis::new(ring, m.cols(), &syz.columns(), &mfcat::Budget::default()).unwrap();
    nullspace(rows, cols).into_iter().all(|v| {
        let vector: Vec<Polynomial> = (0..m.cols())
            .map(|j| {
                let terms = unknowns
                    .iter()
                    .enumerate()
                    .map(|(k, u)| (Monomial::from_exponents(u), v[j * unknowns.len() + k].clone()));
                Polynomial::from_terms(n, terms)
            })
            .collect();
        m.apply(&vector).iter().all(Polynomial::is_zero) && gb.contains(&vector)
    })
}
