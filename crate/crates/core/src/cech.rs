//! Čech hypercohomology over a cover of `Spec A` by basic opens `D(f_i)`.
//!
//! A Čech system assigns a two-periodic complex of free `A`-modules to every
//! nonempty intersection `S` and a chain map `C_S -> C_{S + j}` to every
//! inclusion. The total complex has `D = delta + (-1)^p d` on Čech degree `p`,
//! where `delta` carries the sign `(-1)^m` for `j` at position `m` of `S + j`.
//!
//! Sections of a complex `C` over `D(f_S)` are modelled by the lattices
//! `f_S^-N C`, written in coordinates, so restriction to `S + j` is
//! multiplication by `f_j^N`. The Čech complex of `C_f` is the colimit over `N`
//! of these lattice complexes, and each of them is quasi-isomorphic to `C`
//! because the `f_i^N` generate the unit ideal.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{Z2Complex, Z2Homology};
use crate::curved::{MatrixFactorization, Parity};
use crate::error::{Error, Result};
use crate::exterior::ExteriorBasis;
use crate::groebner::{lift, reduce_entries, Budget, Lift, QDim};
use crate::homcx::{ext_dims, hom_complex};
use crate::matrix::FreeModuleMap;
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCover {
    ambient: Arc<Ring>,
    denominators: Vec<Polynomial>,
    subsets: ExteriorBasis,
}

impl CechCover {
    pub fn new(ambient: &Arc<Ring>, denominators: Vec<Polynomial>) -> Result<Self> {
        if denominators.is_empty() {
            return Err(Error::NotACover);
        }
        if denominators.iter().any(|f| f.nvars() != ambient.nvars()) {
            return Err(Error::RingMismatch("denominator lives in another ring".into()));
        }
        let subsets = ExteriorBasis::new(denominators.len());
        Ok(CechCover { ambient: ambient.clone(), denominators, subsets })
    }

    /// The cover `{1}`.
    pub fn trivial(ambient: &Arc<Ring>) -> Self {
        Self::new(ambient, vec![ambient.one()]).expect("one denominator")
    }

    pub fn ambient(&self) -> &Arc<Ring> {
        &self.ambient
    }

    pub fn denominators(&self) -> &[Polynomial] {
        &self.denominators
    }

    /// Coefficients `g_i` with `sum g_i f_i = 1`.
    pub fn validate(&self, budget: &Budget) -> Result<Vec<Polynomial>> {
        let row = FreeModuleMap::from_rows(&self.ambient, vec![self.denominators.clone()])?;
        match lift(&row, &[self.ambient.one()], budget)? {
            Lift::Solution(g) => Ok(g),
            Lift::NoSolution { .. } => Err(Error::NotACover),
        }
    }

    /// Nonempty subsets of the charts, ordered by size and then lexicographically.
    pub fn intersections(&self) -> Vec<Vec<usize>> {
        (1..self.subsets.len()).map(|k| self.subsets.subset(k).to_vec()).collect()
    }

    pub fn product(&self, s: &[usize]) -> Polynomial {
        s.iter().fold(self.ambient.one(), |acc, &i| acc * &self.denominators[i])
    }

    /// `A[t] / (t f_S - 1)`, one inverted variable per intersection.
    pub fn chart_ring(&self, s: &[usize]) -> Result<Arc<Ring>> {
        self.ambient.localization(&self.product(s), "t")
    }
}

/// Per-intersection complexes and restriction maps.
#[derive(Clone, Debug)]
pub struct CechSystem {
    cover: CechCover,
    charts: Vec<Z2Complex>,
    restrictions: BTreeMap<(usize, usize), [FreeModuleMap; 2]>,
}

impl CechSystem {
    /// `charts[k]` belongs to `cover.intersections()[k]`, and
    /// `restrictions[(k, j)]` maps it to the intersection with chart `j` added.
    pub fn new(
        cover: &CechCover,
        charts: Vec<Z2Complex>,
        restrictions: BTreeMap<(usize, usize), [FreeModuleMap; 2]>,
    ) -> Result<Self> {
        let subsets = cover.intersections();
        if charts.len() != subsets.len() {
            return Err(Error::Shape(format!("{} intersections but {} complexes", subsets.len(), charts.len())));
        }
        if charts.iter().any(|c| c.ring() != cover.ambient()) {
            return Err(Error::RingMismatch("chart complexes must be written over the ambient ring".into()));
        }
        Ok(CechSystem { cover: cover.clone(), charts, restrictions })
    }

    /// The lattice model `f_S^-N C` on every intersection.
    pub fn lattice(cover: &CechCover, complex: &Z2Complex, power: u32) -> Result<Self> {
        let subsets = cover.intersections();
        let ring = cover.ambient();
        let mut restrictions = BTreeMap::new();
        for (k, s) in subsets.iter().enumerate() {
            for j in (0..cover.denominators.len()).filter(|j| !s.contains(j)) {
                let f = cover.denominators[j].pow(power);
                let maps = [Parity::Even, Parity::Odd].map(|p| FreeModuleMap::scalar(ring, complex.rank(p), &f));
                restrictions.insert((k, j), maps);
            }
        }
        Self::new(cover, vec![complex.clone(); subsets.len()], restrictions)
    }

    fn restriction(&self, k: usize, j: usize) -> Result<&[FreeModuleMap; 2]> {
        self.restrictions.get(&(k, j)).ok_or_else(|| {
            Error::IncompatibleRestrictions(format!("missing restriction from intersection {k} along chart {j}"))
        })
    }

    fn check(&self, budget: &Budget) -> Result<()> {
        let subsets = self.cover.intersections();
        let index = |s: &[usize]| subsets.iter().position(|t| t == s).expect("intersection");
        let zero = |m: FreeModuleMap| -> Result<bool> { Ok(reduce_entries(&m, budget)?.is_zero()) };
        let k_all = self.cover.denominators.len();
        for (k, s) in subsets.iter().enumerate() {
            for j in (0..k_all).filter(|j| !s.contains(j)) {
                let t = index(&with(s, j));
                let rho = self.restriction(k, j)?;
                for p in [Parity::Even, Parity::Odd] {
                    let (a, b) = (&rho[p.index()], &rho[p.flip().index()]);
                    let (src, dst) = (&self.charts[k], &self.charts[t]);
                    if a.rows() != dst.rank(p) || a.cols() != src.rank(p) {
                        return Err(Error::IncompatibleRestrictions(format!(
                            "restriction ({k}, {j}) has the wrong shape"
                        )));
                    }
                    let lhs = b.mul(src.d(p))?;
                    let rhs = dst.d(p).mul(a)?;
                    if !zero(lhs.sub(&rhs)?)? {
                        return Err(Error::IncompatibleRestrictions(format!(
                            "restriction ({k}, {j}) does not commute with the {p} differential"
                        )));
                    }
                }
                for i in (j + 1..k_all).filter(|i| !s.contains(i)) {
                    let (sj, si) = (index(&with(s, j)), index(&with(s, i)));
                    for p in [Parity::Even, Parity::Odd] {
                        let a = self.restriction(sj, i)?[p.index()].mul(&rho[p.index()])?;
                        let b = self.restriction(si, j)?[p.index()].mul(&self.restriction(k, i)?[p.index()])?;
                        if !zero(a.sub(&b)?)? {
                            return Err(Error::IncompatibleRestrictions(format!(
                                "restrictions from intersection {k} along charts {j} and {i} disagree"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The total complex, after checking that all squares commute.
    pub fn total(&self, budget: &Budget) -> Result<Z2Complex> {
        self.check(budget)?;
        let subsets = self.cover.intersections();
        let index = |s: &[usize]| subsets.iter().position(|t| t == s).expect("intersection");
        // blocks of total parity e: (intersection, internal parity), with offsets
        let mut layout: [Vec<(usize, Parity, usize)>; 2] = [Vec::new(), Vec::new()];
        let mut size = [0usize; 2];
        for e in [Parity::Even, Parity::Odd] {
            for (k, s) in subsets.iter().enumerate() {
                let a = e + Parity::of(s.len() - 1);
                layout[e.index()].push((k, a, size[e.index()]));
                size[e.index()] += self.charts[k].rank(a);
            }
        }
        let ring = self.cover.ambient();
        let offset = |e: Parity, k: usize| layout[e.index()][k].2;
        let mut d =
            [Parity::Even, Parity::Odd].map(|e| FreeModuleMap::zeros(ring, size[e.flip().index()], size[e.index()]));
        for e in [Parity::Even, Parity::Odd] {
            let m = &mut d[e.index()];
            for &(k, a, col0) in &layout[e.index()] {
                let s = &subsets[k];
                let p = s.len() - 1;
                let internal =
                    if p.is_multiple_of(2) { self.charts[k].d(a).clone() } else { self.charts[k].d(a).neg() };
                put(m, offset(e.flip(), k), col0, &internal);
                for j in (0..self.cover.denominators.len()).filter(|j| !s.contains(j)) {
                    let t = with(s, j);
                    let pos = t.iter().position(|&x| x == j).unwrap();
                    let rho = &self.restriction(k, j)?[a.index()];
                    let signed = if pos % 2 == 0 { rho.clone() } else { rho.neg() };
                    put(m, offset(e.flip(), index(&t)), col0, &signed);
                }
            }
        }
        let [d0, d1] = d;
        Z2Complex::new(d0, d1, budget)
    }
}

fn with(s: &[usize], j: usize) -> Vec<usize> {
    let mut t = s.to_vec();
    t.push(j);
    t.sort_unstable();
    t
}

fn put(m: &mut FreeModuleMap, row0: usize, col0: usize, block: &FreeModuleMap) {
    for (i, j, p) in block.entries() {
        if !p.is_zero() {
            m.set(row0 + i, col0 + j, p.clone());
        }
    }
}

/// Homology of the total complex of a Čech system.
pub fn cech_hyper(system: &CechSystem, budget: &Budget) -> Result<Z2Homology> {
    system.cover.validate(budget)?;
    system.total(budget)?.homology(budget)
}

/// Hypercohomology of a complex of free `A`-modules over the given cover.
pub fn cech_hyper_complex(complex: &Z2Complex, cover: &CechCover, power: u32, budget: &Budget) -> Result<Z2Homology> {
    cech_hyper(&CechSystem::lattice(cover, complex, power)?, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CechOptions {
    /// Exponent `N` of the lattices `f_S^-N C`.
    pub power: u32,
    /// Also compute Ext over every localized intersection ring.
    pub local: bool,
}

impl Default for CechOptions {
    fn default() -> Self {
        CechOptions { power: 1, local: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExt {
    pub intersection: Vec<usize>,
    pub ring: Arc<Ring>,
    pub dims: [QDim; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechExt {
    pub total: Z2Homology,
    pub local: Vec<LocalExt>,
}

impl CechExt {
    pub fn dims(&self) -> [QDim; 2] {
        self.total.dims
    }
}

/// `Ext(P, Q)` computed as the hypercohomology of `Hom(P, Q)` over the cover.
pub fn cech_ext(
    p: &MatrixFactorization,
    q: &MatrixFactorization,
    cover: &CechCover,
    options: CechOptions,
    budget: &Budget,
) -> Result<CechExt> {
    if p.ring() != cover.ambient() {
        return Err(Error::RingMismatch("the cover lives over another ring".into()));
    }
    cover.validate(budget)?;
    let hom = hom_complex(p, q)?;
    let total = cech_hyper_complex(hom.complex(), cover, options.power, budget)?;
    let mut local = Vec::new();
    if options.local {
        let subsets = cover.intersections();
        let results: Vec<Result<LocalExt>> = std::thread::scope(|sc| {
            let handles: Vec<_> = subsets
                .iter()
                .map(|s| {
                    sc.spawn(move || -> Result<LocalExt> {
                        let ring = cover.chart_ring(s)?;
                        let dims = ext_dims(&p.base_change(&ring)?, &q.base_change(&ring)?, budget)?;
                        Ok(LocalExt { intersection: s.clone(), ring, dims })
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("chart worker panicked")).collect()
        });
        for r in results {
            local.push(r?);
        }
    }
    Ok(CechExt { total, local })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilization::koszul_stab;

    fn b() -> Budget {
        Budget::default()
    }

    fn cover(ring: &Arc<Ring>, dens: &[&str]) -> CechCover {
        CechCover::new(ring, dens.iter().map(|d| ring.parse(d).unwrap()).collect()).unwrap()
    }

    #[test]
    fn validation() {
        let r = Ring::polynomial(&["x"]).unwrap();
        assert_eq!(cover(&r, &["1"]).validate(&b()).unwrap(), vec![r.one()]);
        let c = cover(&r, &["x", "x - 1"]);
        let g = c.validate(&b()).unwrap();
        let sum = g.iter().zip(c.denominators()).fold(r.zero(), |acc, (g, f)| acc + g * f);
        assert_eq!(sum, r.one());
        assert!(matches!(cover(&r, &["x", "x^2"]).validate(&b()), Err(Error::NotACover)));
        assert!(matches!(CechCover::new(&r, vec![]), Err(Error::NotACover)));
    }

    #[test]
    fn structure_sheaf_on_the_line() {
        let r = Ring::polynomial(&["x"]).unwrap();
        let o = Z2Complex::new(FreeModuleMap::zeros(&r, 0, 1), FreeModuleMap::zeros(&r, 1, 0), &b()).unwrap();
        let h = cech_hyper_complex(&o, &cover(&r, &["x + 1", "x - 1"]), 1, &b()).unwrap();
        assert_eq!(h.dims, [QDim::Infinite, QDim::Finite(0)]);
        // H^0 is free of rank one: after killing x it is one-dimensional
        assert_eq!(h.even.at_origin().q_dimension(&b()).unwrap(), QDim::Finite(1));
        let one = cech_hyper_complex(&o, &CechCover::trivial(&r), 1, &b()).unwrap();
        assert_eq!(one.dims, [QDim::Infinite, QDim::Finite(0)]);
    }

    #[test]
    fn incompatible_restrictions_are_rejected() {
        let r = Ring::polynomial(&["x"]).unwrap();
        let x = r.parse("x").unwrap();
        let c = Z2Complex::new(FreeModuleMap::zeros(&r, 1, 1), FreeModuleMap::scalar(&r, 1, &x), &b()).unwrap();
        let cv = cover(&r, &["x + 1", "x - 1"]);
        let mut restrictions = BTreeMap::new();
        // even part restricted by 1, odd part by 2: does not commute with d1 = x
        let two = Polynomial::from_int(1, 2);
        restrictions.insert((0, 1), [FreeModuleMap::identity(&r, 1), FreeModuleMap::scalar(&r, 1, &two)]);
        restrictions.insert((1, 0), [FreeModuleMap::identity(&r, 1), FreeModuleMap::identity(&r, 1)]);
        let sys = CechSystem::new(&cv, vec![c.clone(); 3], restrictions).unwrap();
        assert!(matches!(cech_hyper(&sys, &b()), Err(Error::IncompatibleRestrictions(_))));
        let missing = CechSystem::new(&cv, vec![c; 3], BTreeMap::new()).unwrap();
        assert!(matches!(cech_hyper(&missing, &b()), Err(Error::IncompatibleRestrictions(_))));
    }

    #[test]
    fn cech_ext_reproduces_affine_ext() {
        let r = Ring::polynomial(&["x"]).unwrap();
        let p = koszul_stab(&r, &r.parse("x^3").unwrap()).unwrap();
        let affine = ext_dims(&p, &p, &b()).unwrap();
        for dens in [&["1"][..], &["x + 1", "x - 1"], &["x - 1", "x + 1"]] {
            let res = cech_ext(&p, &p, &cover(&r, dens), CechOptions::default(), &b()).unwrap();
            assert_eq!(res.dims(), affine, "cover {dens:?}");
        }
    }

    #[test]
    fn local_diagnostics() {
        // Koszul object of x^3 is supported at the origin, which lies in D(x - 1) only
        let r = Ring::polynomial(&["x"]).unwrap();
        let p = koszul_stab(&r, &r.parse("x^3").unwrap()).unwrap();
        let res = cech_ext(&p, &p, &cover(&r, &["x", "x - 1"]), CechOptions::default(), &b()).unwrap();
        let local: Vec<[QDim; 2]> = res.local.iter().map(|l| l.dims).collect();
        let z = [QDim::Finite(0), QDim::Finite(0)];
        assert_eq!(local, vec![z, [QDim::Finite(1), QDim::Finite(1)], z]);
        assert_eq!(res.dims(), [QDim::Finite(1), QDim::Finite(1)]);
    }

    #[test]
    fn lattice_exponent_does_not_matter() {
        let r = Ring::polynomial(&["x"]).unwrap();
        let p = koszul_stab(&r, &r.parse("x^3").unwrap()).unwrap();
        let cv = cover(&r, &["x + 1", "x - 1", "x + 2"]);
        let one = cech_ext(&p, &p, &cv, CechOptions { power: 1, local: false }, &b()).unwrap();
        let two = cech_ext(&p, &p, &cv, CechOptions { power: 2, local: false }, &b()).unwrap();
        assert_eq!(one.dims(), two.dims());
    }
}
