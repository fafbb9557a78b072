//! Matrix factorizations `P1 -p1-> P0 -p0-> P1` with `p1 p0 = W` and `p0 p1 = W`,
//! maps between them, and the constructions of the curved dg category.
//!
//! A map of parity `e` between `P` and `Q` is stored as two blocks:
//! even maps as `[P0 -> Q0, P1 -> Q1]`, odd maps as `[P0 -> Q1, P1 -> Q0]`.
//! Composition is plain matrix composition on `P0 + P1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{reduce_entries, Budget, ModulePresentation};
use crate::matrix::FreeModuleMap;
use crate::poly::{Factor, Polynomial, ProductRing, Ring, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Addition in Z/2.
impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    ring: Arc<Ring>,
    w: Polynomial,
    p1: FreeModuleMap,
    p0: FreeModuleMap,
}

/// Checks `p1 p0 = W id` and `p0 p1 = W id`, modulo the ring relations.
pub fn verify(w: &Polynomial, p1: &FreeModuleMap, p0: &FreeModuleMap) -> Result<()> {
    let ring = p1.ring();
    if p0.ring() != ring {
        return Err(Error::RingMismatch("p1 and p0 live over different rings".into()));
    }
    if w.nvars() != ring.nvars() {
        return Err(Error::RingMismatch("W lives in another ring".into()));
    }
    if p1.cols() != p0.rows() || p0.cols() != p1.rows() {
        return Err(Error::Shape(format!("p1 is {}x{} but p0 is {}x{}", p1.rows(), p1.cols(), p0.rows(), p0.cols())));
    }
    let budget = Budget::default();
    for (name, a, b) in [("p1*p0", p1, p0), ("p0*p1", p0, p1)] {
        let n = a.rows();
        let prod = a.mul(b)?;
        let diff = reduce_entries(&prod.sub(&FreeModuleMap::scalar(ring, n, w))?, &budget)?;
        let bad = diff.entries().find(|(_, _, p)| !p.is_zero()).map(|(i, j, _)| (i, j));
        if let Some((i, j)) = bad {
            let expected = if i == j { w.clone() } else { ring.zero() };
            let found = reduce_entries(&prod.slice(i..i + 1, j..j + 1), &budget)?;
            return Err(Error::CurvatureMismatch {
                product: name.into(),
                row: i,
                col: j,
                expected: ring.format(&expected),
                found: ring.format(found.get(0, 0)),
            });
        }
    }
    Ok(())
}

impl MatrixFactorization {
    /// `p1: P1 -> P0` is `rank_even x rank_odd`, `p0: P0 -> P1` the transpose shape.
    pub fn new(ring: &Arc<Ring>, w: Polynomial, p1: FreeModuleMap, p0: FreeModuleMap) -> Result<Self> {
        if p1.ring() != ring || p0.ring() != ring {
            return Err(Error::RingMismatch("maps live over another ring".into()));
        }
        verify(&w, &p1, &p0)?;
        Ok(MatrixFactorization { ring: ring.clone(), w, p1, p0 })
    }

    /// The object with no summands.
    pub fn zero(ring: &Arc<Ring>, w: Polynomial) -> Self {
        let z = FreeModuleMap::zeros(ring, 0, 0);
        MatrixFactorization { ring: ring.clone(), w, p1: z.clone(), p0: z }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn curvature(&self) -> &Polynomial {
        &self.w
    }

    pub fn rank_even(&self) -> usize {
        self.p1.rows()
    }

    pub fn rank_odd(&self) -> usize {
        self.p1.cols()
    }

    pub fn rank(&self, p: Parity) -> usize {
        match p {
            Parity::Even => self.rank_even(),
            Parity::Odd => self.rank_odd(),
        }
    }

    pub fn p1(&self) -> &FreeModuleMap {
        &self.p1
    }

    pub fn p0(&self) -> &FreeModuleMap {
        &self.p0
    }

    pub fn verify(&self) -> Result<()> {
        verify(&self.w, &self.p1, &self.p0)
    }

    pub fn same_category(&self, other: &MatrixFactorization) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("factorizations over different rings".into()));
        }
        if self.w != other.w {
            return Err(Error::CurvatureMismatch {
                product: "curvature".into(),
                row: 0,
                col: 0,
                expected: self.ring.format(&self.w),
                found: self.ring.format(&other.w),
            });
        }
        Ok(())
    }

    /// `P[1]`: the two pieces swapped and both maps negated.
    pub fn shift(&self) -> MatrixFactorization {
        MatrixFactorization { ring: self.ring.clone(), w: self.w.clone(), p1: self.p0.neg(), p0: self.p1.neg() }
    }

    pub fn direct_sum(&self, other: &MatrixFactorization) -> Result<MatrixFactorization> {
        self.same_category(other)?;
        Ok(MatrixFactorization {
            ring: self.ring.clone(),
            w: self.w.clone(),
            p1: self.p1.direct_sum(&other.p1)?,
            p0: self.p0.direct_sum(&other.p0)?,
        })
    }

    /// `Hom(P, O)`, a factorization of `-W` with `p1' = p1^t`, `p0' = -p0^t`.
    pub fn dual(&self) -> MatrixFactorization {
        MatrixFactorization {
            ring: self.ring.clone(),
            w: -&self.w,
            p1: self.p1.transpose(),
            p0: self.p0.transpose().neg(),
        }
    }

    /// `coker(p1)` as a module over `A / (W)`.
    pub fn cokernel(&self) -> Result<ModulePresentation> {
        let quot = self.ring.quotient(std::slice::from_ref(&self.w))?;
        let rel = self.p1.with_ring(&quot)?;
        Ok(ModulePresentation::new(&quot, self.rank_even(), rel))
    }

    /// The same factorization over a ring whose first variables are this ring's.
    pub fn base_change(&self, ring: &Arc<Ring>) -> Result<MatrixFactorization> {
        let extra = ring.nvars().saturating_sub(self.ring.nvars());
        MatrixFactorization::new(
            ring,
            self.w.extend_vars(extra),
            self.p1.base_change(ring)?,
            self.p0.base_change(ring)?,
        )
    }

    /// The odd endomorphism `[[0, p1], [p0, 0]]` of `P0 + P1`.
    pub fn total_differential(&self) -> FreeModuleMap {
        let (e, o) = (self.rank_even(), self.rank_odd());
        let z0 = FreeModuleMap::zeros(&self.ring, e, e);
        let z1 = FreeModuleMap::zeros(&self.ring, o, o);
        FreeModuleMap::blocks(&[vec![&z0, &self.p1], vec![&self.p0, &z1]]).expect("consistent shapes")
    }

    pub fn to_json(&self) -> MfJson {
        MfJson {
            ring: self.ring.spec(),
            w: self.ring.format(&self.w),
            rank_even: self.rank_even(),
            rank_odd: self.rank_odd(),
            p1: self.p1.to_literals(),
            p0: self.p0.to_literals(),
        }
    }

    pub fn from_json(json: &MfJson) -> Result<Self> {
        let ring = json.ring.build()?;
        let w = ring.parse(&json.w)?;
        let parse = |rows: &[Vec<String>], r: usize, c: usize| -> Result<FreeModuleMap> {
            let data = rows
                .iter()
                .map(|row| row.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            FreeModuleMap::from_rows_shaped(&ring, r, c, data)
        };
        let p1 = parse(&json.p1, json.rank_even, json.rank_odd)?;
        let p0 = parse(&json.p0, json.rank_odd, json.rank_even)?;
        MatrixFactorization::new(&ring, w, p1, p0)
    }
}

/// Serialized factorization; entries are polynomial literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfJson {
    pub ring: RingSpec,
    #[serde(rename = "W")]
    pub w: String,
    pub rank_even: usize,
    pub rank_odd: usize,
    pub p1: Vec<Vec<String>>,
    pub p0: Vec<Vec<String>>,
}

/// Graded tensor product over `A1 (x) A2` with curvature `W1 + W2`.
///
/// Even part `P0 Q0 + P1 Q1`, odd part `P1 Q0 + P0 Q1`.
pub fn external_tensor(p: &MatrixFactorization, q: &MatrixFactorization) -> Result<MatrixFactorization> {
    let prod = ProductRing::new(p.ring.clone(), q.ring.clone())?;
    external_tensor_in(&prod, p, q)
}

/// As [`external_tensor`], over an already constructed product ring.
pub fn external_tensor_in(
    prod: &ProductRing,
    p: &MatrixFactorization,
    q: &MatrixFactorization,
) -> Result<MatrixFactorization> {
    if prod.left() != &p.ring || prod.right() != &q.ring {
        return Err(Error::RingMismatch("factors do not match the product ring".into()));
    }
    let ring = prod.ring();
    let pull = |m: &FreeModuleMap, which: Factor| -> Result<FreeModuleMap> {
        let mut out = FreeModuleMap::zeros(ring, m.rows(), m.cols());
        for (i, j, e) in m.entries() {
            out.set(i, j, prod.pullback(e, which)?);
        }
        Ok(out)
    };
    let (p1, p0) = (pull(&p.p1, Factor::First)?, pull(&p.p0, Factor::First)?);
    let (q1, q0) = (pull(&q.p1, Factor::Second)?, pull(&q.p0, Factor::Second)?);
    let id = |n| FreeModuleMap::identity(ring, n);
    let (pe, po, qe, qo) = (p.rank_even(), p.rank_odd(), q.rank_even(), q.rank_odd());

    let t1 = FreeModuleMap::blocks(&[
        vec![&p1.kron(&id(qe))?, &id(pe).kron(&q1)?],
        vec![&id(po).kron(&q0)?.neg(), &p0.kron(&id(qo))?],
    ])?;
    let t0 = FreeModuleMap::blocks(&[
        vec![&p0.kron(&id(qe))?, &id(po).kron(&q1)?.neg()],
        vec![&id(pe).kron(&q0)?, &p1.kron(&id(qo))?],
    ])?;
    let w = prod.pullback(&p.w, Factor::First)? + prod.pullback(&q.w, Factor::Second)?;
    MatrixFactorization::new(ring, w, t1, t0)
}

/// A homogeneous map between two factorizations of the same curvature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvedMap {
    source: MatrixFactorization,
    target: MatrixFactorization,
    parity: Parity,
    blocks: [FreeModuleMap; 2],
}

impl CurvedMap {
    /// Even blocks are `[P0 -> Q0, P1 -> Q1]`, odd blocks `[P0 -> Q1, P1 -> Q0]`.
    pub fn new(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        parity: Parity,
        blocks: [FreeModuleMap; 2],
    ) -> Result<Self> {
        source.same_category(target)?;
        let (pe, po) = (source.rank_even(), source.rank_odd());
        let (qe, qo) = (target.rank_even(), target.rank_odd());
        let shapes = match parity {
            Parity::Even => [(qe, pe), (qo, po)],
            Parity::Odd => [(qo, pe), (qe, po)],
        };
        for (k, (b, (r, c))) in blocks.iter().zip(shapes).enumerate() {
            if b.rows() != r || b.cols() != c {
                return Err(Error::Shape(format!(
                    "block {k} of a {parity} map is {}x{}, expected {r}x{c}",
                    b.rows(),
                    b.cols()
                )));
            }
            if b.ring() != source.ring() {
                return Err(Error::RingMismatch(format!("block {k} lives over another ring")));
            }
        }
        Ok(CurvedMap { source: source.clone(), target: target.clone(), parity, blocks })
    }

    pub fn zero(source: &MatrixFactorization, target: &MatrixFactorization, parity: Parity) -> Result<Self> {
        let r = source.ring();
        let (pe, po, qe, qo) = (source.rank_even(), source.rank_odd(), target.rank_even(), target.rank_odd());
        let blocks = match parity {
            Parity::Even => [FreeModuleMap::zeros(r, qe, pe), FreeModuleMap::zeros(r, qo, po)],
            Parity::Odd => [FreeModuleMap::zeros(r, qo, pe), FreeModuleMap::zeros(r, qe, po)],
        };
        Self::new(source, target, parity, blocks)
    }

    pub fn identity(p: &MatrixFactorization) -> Self {
        let r = p.ring();
        let blocks = [FreeModuleMap::identity(r, p.rank_even()), FreeModuleMap::identity(r, p.rank_odd())];
        CurvedMap { source: p.clone(), target: p.clone(), parity: Parity::Even, blocks }
    }

    /// Cuts a map of `P0 + P1 -> Q0 + Q1` into blocks; the off-parity blocks are dropped.
    pub fn from_total(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        parity: Parity,
        total: &FreeModuleMap,
    ) -> Result<Self> {
        let (pe, po) = (source.rank_even(), source.rank_odd());
        let (qe, qo) = (target.rank_even(), target.rank_odd());
        if total.rows() != qe + qo || total.cols() != pe + po {
            return Err(Error::Shape("total matrix has the wrong shape".into()));
        }
        let blocks = match parity {
            Parity::Even => [total.slice(0..qe, 0..pe), total.slice(qe..qe + qo, pe..pe + po)],
            Parity::Odd => [total.slice(qe..qe + qo, 0..pe), total.slice(0..qe, pe..pe + po)],
        };
        Self::new(source, target, parity, blocks)
    }

    pub fn source(&self) -> &MatrixFactorization {
        &self.source
    }

    pub fn target(&self) -> &MatrixFactorization {
        &self.target
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn blocks(&self) -> &[FreeModuleMap; 2] {
        &self.blocks
    }

    /// The map `P0 + P1 -> Q0 + Q1`.
    pub fn total(&self) -> FreeModuleMap {
        let r = self.source.ring();
        let (pe, po) = (self.source.rank_even(), self.source.rank_odd());
        let (qe, qo) = (self.target.rank_even(), self.target.rank_odd());
        let [a, b] = &self.blocks;
        match self.parity {
            Parity::Even => FreeModuleMap::blocks(&[
                vec![a, &FreeModuleMap::zeros(r, qe, po)],
                vec![&FreeModuleMap::zeros(r, qo, pe), b],
            ]),
            Parity::Odd => FreeModuleMap::blocks(&[
                vec![&FreeModuleMap::zeros(r, qe, pe), b],
                vec![a, &FreeModuleMap::zeros(r, qo, po)],
            ]),
        }
        .expect("consistent shapes")
    }

    /// `q f - (-1)^|f| f p`.
    pub fn differential(&self) -> CurvedMap {
        let q = self.target.total_differential();
        let p = self.source.total_differential();
        let f = self.total();
        let qf = q.mul(&f).expect("shapes agree");
        let fp = f.mul(&p).expect("shapes agree");
        let d = match self.parity {
            Parity::Even => qf.sub(&fp),
            Parity::Odd => qf.add(&fp),
        }
        .expect("shapes agree");
        CurvedMap::from_total(&self.source, &self.target, self.parity.flip(), &d).expect("shapes agree")
    }

    pub fn is_zero(&self) -> bool {
        let budget = Budget::default();
        self.blocks.iter().all(|b| reduce_entries(b, &budget).map(|r| r.is_zero()).unwrap_or(false))
    }

    pub fn is_closed(&self) -> bool {
        self.differential().is_zero()
    }

    /// `self . other`, i.e. first `other: P -> Q`, then `self: Q -> R`.
    pub fn compose(&self, other: &CurvedMap) -> Result<CurvedMap> {
        if self.source != other.target {
            return Err(Error::Shape("composing maps whose ends do not match".into()));
        }
        let total = self.total().mul(&other.total())?;
        CurvedMap::from_total(&other.source, &self.target, self.parity + other.parity, &total)
    }

    pub fn add(&self, other: &CurvedMap) -> Result<CurvedMap> {
        if self.source != other.source || self.target != other.target || self.parity != other.parity {
            return Err(Error::Shape("adding maps of different types".into()));
        }
        let blocks = [self.blocks[0].add(&other.blocks[0])?, self.blocks[1].add(&other.blocks[1])?];
        Ok(CurvedMap { blocks, ..self.clone() })
    }

    pub fn scale(&self, c: &Polynomial) -> CurvedMap {
        let blocks = [self.blocks[0].scale(c), self.blocks[1].scale(c)];
        CurvedMap { blocks, ..self.clone() }
    }

    /// Mapping cone `Q + P[1]` of a closed even map `f: P -> Q`:
    /// even part `Q0 + P1`, odd part `Q1 + P0`.
    pub fn cone(&self) -> Result<MatrixFactorization> {
        if self.parity != Parity::Even {
            return Err(Error::Unsupported("cone of an odd map".into()));
        }
        if !self.is_closed() {
            return Err(Error::NotClosed("the differential of the map is nonzero".into()));
        }
        let (p, q) = (&self.source, &self.target);
        let [f00, f11] = &self.blocks;
        let r = p.ring();
        let c1 = FreeModuleMap::blocks(&[
            vec![q.p1(), f00],
            vec![&FreeModuleMap::zeros(r, p.rank_odd(), q.rank_odd()), &p.p0().neg()],
        ])?;
        let c0 = FreeModuleMap::blocks(&[
            vec![q.p0(), f11],
            vec![&FreeModuleMap::zeros(r, p.rank_even(), q.rank_even()), &p.p1().neg()],
        ])?;
        MatrixFactorization::new(r, q.curvature().clone(), c1, c0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(ring: &Arc<Ring>, rows: &[&[&str]]) -> FreeModuleMap {
        let rows = rows.iter().map(|r| r.iter().map(|s| ring.parse(s).unwrap()).collect()).collect();
        FreeModuleMap::from_rows(ring, rows).unwrap()
    }

    fn mf(ring: &Arc<Ring>, w: &str, p1: &[&[&str]], p0: &[&[&str]]) -> Result<MatrixFactorization> {
        MatrixFactorization::new(ring, ring.parse(w).unwrap(), mat(ring, p1), mat(ring, p0))
    }

    fn x() -> Arc<Ring> {
        Ring::polynomial(&["x"]).unwrap()
    }

    #[test]
    fn verify_examples() {
        let r = Ring::polynomial(&["x", "y"]).unwrap();
        assert!(mf(&r, "x^2", &[&["x"]], &[&["x"]]).is_ok());
        match mf(&r, "x^2", &[&["x"]], &[&["y"]]) {
            Err(Error::CurvatureMismatch { product, row: 0, col: 0, expected, found }) => {
                assert_eq!(product, "p1*p0");
                assert_eq!(expected, "x^2");
                assert_eq!(found, "x*y");
            }
            other => panic!("unexpected {other:?}"),
        }
        let off = mf(&r, "x*y", &[&["x", "1"], &["0", "y"]], &[&["y", "0"], &["0", "x"]]);
        assert!(matches!(off, Err(Error::CurvatureMismatch { row: 0, col: 1, .. })));
    }

    #[test]
    fn verification_respects_ring_relations() {
        let r = crate::poly::Ring::with_relation_literals(&["x"], &["x^2 - x"], Default::default()).unwrap();
        assert!(mf(&r, "x", &[&["x^2"]], &[&["1"]]).is_ok());
    }

    #[test]
    fn shift_negates_and_swaps() {
        let r = x();
        let p = mf(&r, "x^2", &[&["x"]], &[&["x"]]).unwrap();
        let s = p.shift();
        assert_eq!(s.p1(), &mat(&r, &[&["-x"]]));
        assert_eq!(s.p0(), &mat(&r, &[&["-x"]]));
        assert_eq!(s.shift(), p);
        let q = mf(&r, "x^3", &[&["x^2"]], &[&["x"]]).unwrap();
        assert_eq!(q.shift().p1(), &mat(&r, &[&["-x"]]));
        assert!(q.shift().verify().is_ok());
    }

    #[test]
    fn non_square_factorizations_are_rejected() {
        // p1 p0 = x^3 but p0 p1 has a zero diagonal entry
        let r = x();
        let p = mf(&r, "x^3", &[&["x", "0"]], &[&["x^2"], &["0"]]);
        assert!(matches!(p, Err(Error::CurvatureMismatch { row: 1, col: 1, .. })));
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let r = Ring::polynomial(&["x", "y"]).unwrap();
        let a = mf(&r, "x*y", &[&["x"]], &[&["y"]]).unwrap();
        let b = mf(&r, "x*y", &[&["y"]], &[&["x"]]).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!((s.rank_even(), s.rank_odd()), (2, 2));
        assert_eq!(s.p1(), &mat(&r, &[&["x", "0"], &["0", "y"]]));
        assert!(s.verify().is_ok());
        assert!(s.shift().verify().is_ok());
        let other = mf(&r, "x^2", &[&["x"]], &[&["x"]]).unwrap();
        assert!(a.direct_sum(&other).is_err());
    }

    #[test]
    fn dual_is_an_involution() {
        let r = x();
        let p = mf(&r, "x^2", &[&["x"]], &[&["x"]]).unwrap();
        let d = p.dual();
        assert_eq!(r.format(d.curvature()), "-x^2");
        assert_eq!(d.p1(), &mat(&r, &[&["x"]]));
        assert_eq!(d.p0(), &mat(&r, &[&["-x"]]));
        assert!(d.verify().is_ok());
        assert_eq!(d.dual(), p);

        let r2 = Ring::polynomial(&["x", "y"]).unwrap();
        let q = mf(&r2, "x*y", &[&["x", "y^2"], &["0", "y"]], &[&["y", "-y^2"], &["0", "x"]]).unwrap();
        let dq = q.dual();
        assert_eq!((dq.rank_even(), dq.rank_odd()), (q.rank_odd(), q.rank_even()));
        assert!(dq.verify().is_ok());
        assert_eq!(dq.dual(), q);
    }

    #[test]
    fn tensor_of_rank_one_factorizations() {
        let a = x();
        let b = Ring::polynomial(&["y"]).unwrap();
        let p = mf(&a, "x^2", &[&["x"]], &[&["x"]]).unwrap();
        let q = mf(&b, "-y^2", &[&["y"]], &[&["-y"]]).unwrap();
        let t = external_tensor(&p, &q).unwrap();
        assert_eq!((t.rank_even(), t.rank_odd()), (2, 2));
        assert_eq!(t.ring().format(t.curvature()), "x^2 - y^2");
        assert!(t.verify().is_ok());
        let z = MatrixFactorization::zero(&b, b.parse("-y^2").unwrap());
        let tz = external_tensor(&p, &z).unwrap();
        assert_eq!((tz.rank_even(), tz.rank_odd()), (0, 0));
        assert!(matches!(external_tensor(&p, &p), Err(Error::VariableCollision(_))));
    }

    #[test]
    fn cone_of_zero_is_sum_with_shift() {
        let r = x();
        let p = mf(&r, "x^3", &[&["x"]], &[&["x^2"]]).unwrap();
        let q = mf(&r, "x^3", &[&["x^2"]], &[&["x"]]).unwrap();
        let c = CurvedMap::zero(&p, &q, Parity::Even).unwrap().cone().unwrap();
        assert_eq!(c, q.direct_sum(&p.shift()).unwrap());
    }

    #[test]
    fn cone_of_multiplication_by_x() {
        let r = x();
        let p = mf(&r, "x^2", &[&["x"]], &[&["x"]]).unwrap();
        let f = CurvedMap::identity(&p).scale(&r.parse("x").unwrap());
        assert!(f.is_closed());
        let c = f.cone().unwrap();
        assert!(c.verify().is_ok());
        assert_eq!((c.rank_even(), c.rank_odd()), (2, 2));
    }

    #[test]
    fn cone_rejects_open_maps() {
        let r = x();
        let p = mf(&r, "x^2", &[&["x"]], &[&["x"]]).unwrap();
        let f = CurvedMap::new(&p, &p, Parity::Even, [mat(&r, &[&["1"]]), mat(&r, &[&["0"]])]).unwrap();
        assert!(!f.is_closed());
        assert!(matches!(f.cone(), Err(Error::NotClosed(_))));
        let odd = CurvedMap::zero(&p, &p, Parity::Odd).unwrap();
        assert!(matches!(odd.cone(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn differential_squares_to_zero_and_leibniz() {
        let r = Ring::polynomial(&["x", "y"]).unwrap();
        let p = mf(&r, "x^2*y", &[&["x", "y"], &["0", "x"]], &[&["x*y", "-y^2"], &["0", "x*y"]]).unwrap();
        let f = CurvedMap::new(
            &p,
            &p,
            Parity::Odd,
            [mat(&r, &[&["1", "x"], &["y", "0"]]), mat(&r, &[&["x^2", "0"], &["1", "y"]])],
        )
        .unwrap();
        assert!(f.differential().differential().is_zero());
        let g = CurvedMap::new(
            &p,
            &p,
            Parity::Even,
            [mat(&r, &[&["y", "1"], &["0", "x"]]), mat(&r, &[&["1", "0"], &["x", "x"]])],
        )
        .unwrap();
        // d(fg) = d(f) g + (-1)^|f| f d(g)
        let lhs = f.compose(&g).unwrap().differential();
        let rhs =
            f.differential().compose(&g).unwrap().add(&f.compose(&g.differential()).unwrap().scale(&-r.one())).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cokernels() {
        let b = Budget::default();
        let r = x();
        let p = mf(&r, "x^2", &[&["x"]], &[&["x"]]).unwrap();
        assert_eq!(p.cokernel().unwrap().q_dimension(&b).unwrap(), crate::groebner::QDim::Finite(1));
        let q = mf(&r, "x^3", &[&["x^2"]], &[&["x"]]).unwrap();
        let c = q.cokernel().unwrap();
        assert_eq!(c.q_dimension(&b).unwrap(), crate::groebner::QDim::Finite(2));
        assert_eq!(q.shift().cokernel().unwrap().q_dimension(&b).unwrap(), crate::groebner::QDim::Finite(1));
    }

    #[test]
    fn json_round_trip() {
        let r = Ring::polynomial(&["x", "y"]).unwrap();
        let p = mf(&r, "x^3 + y^3", &[&["x", "-y^2"], &["y", "x^2"]], &[&["x^2", "y^2"], &["-y", "x"]]).unwrap();
        let json = serde_json::to_string(&p.to_json()).unwrap();
        let back = MatrixFactorization::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), json);
        let z = MatrixFactorization::zero(&r, r.parse("x*y").unwrap());
        let zj = serde_json::to_string(&z.to_json()).unwrap();
        assert_eq!(MatrixFactorization::from_json(&serde_json::from_str(&zj).unwrap()).unwrap(), z);
    }
}
