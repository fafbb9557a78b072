//! Dense matrices of polynomials, i.e. maps between free modules of finite rank.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

/// A map `R^cols -> R^rows` over `ring`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModuleMap {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl FreeModuleMap {
    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        FreeModuleMap { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        Self::scalar(ring, n, &ring.one())
    }

    /// `p * id_n`.
    pub fn scalar(ring: &Arc<Ring>, n: usize, p: &Polynomial) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {ncols}", row.len())));
            }
            for p in row {
                if p.nvars() != ring.nvars() {
                    return Err(Error::RingMismatch(format!("matrix entry in row {i} has the wrong arity")));
                }
                entries.push(p);
            }
        }
        Ok(FreeModuleMap { ring: ring.clone(), rows: nrows, cols: ncols, entries })
    }

    /// Explicit shape, for the cases where a row list cannot carry the column count.
    pub fn from_rows_shaped(ring: &Arc<Ring>, rows: usize, cols: usize, data: Vec<Vec<Polynomial>>) -> Result<Self> {
        if data.len() != rows {
            return Err(Error::Shape(format!("expected {rows} rows, found {}", data.len())));
        }
        if rows == 0 {
            return Ok(Self::zeros(ring, 0, cols));
        }
        let m = Self::from_rows(ring, data)?;
        if m.cols != cols {
            return Err(Error::Shape(format!("expected {cols} columns, found {}", m.cols)));
        }
        Ok(m)
    }

    pub fn from_columns(ring: &Arc<Ring>, rows: usize, cols: &[Vec<Polynomial>]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has the wrong length");
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        debug_assert_eq!(p.nvars(), self.ring.nvars());
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        let cols = self.cols;
        self.entries.iter().enumerate().map(move |(k, p)| (k / cols.max(1), k % cols.max(1), p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    fn same_ring(&self, other: &FreeModuleMap) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch("matrices over different rings".into()))
        }
    }

    pub fn mul(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &FreeModuleMap,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Result<FreeModuleMap> {
        self.same_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("operands have different shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(FreeModuleMap { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self) -> FreeModuleMap {
        self.map(|p| -p)
    }

    pub fn scale(&self, p: &Polynomial) -> FreeModuleMap {
        self.map(|q| q * p)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> FreeModuleMap {
        FreeModuleMap {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> FreeModuleMap {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product; row `(i, k)` of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        self.same_ring(other)?;
        let mut out = Self::zeros(&self.ring, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Assembles a block matrix; every row of blocks must agree in height and
    /// every column of blocks in width.
    pub fn blocks(grid: &[Vec<&FreeModuleMap>]) -> Result<FreeModuleMap> {
        let first = grid.first().and_then(|r| r.first()).ok_or_else(|| Error::Shape("empty block grid".into()))?;
        let ring = first.ring.clone();
        let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        let mut out = Self::zeros(&ring, heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::Shape("ragged block grid".into()));
            }
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                first.same_ring(b)?;
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::Shape(format!("block ({bi}, {bj}) has the wrong shape")));
                }
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack of matrices with different heights".into()));
        }
        self.same_ring(other)?;
        let mut out = Self::zeros(&self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Block diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        self.same_ring(other)?;
        let mut out = Self::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Sub-matrix of the given row and column ranges.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> FreeModuleMap {
        let mut out = Self::zeros(&self.ring, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.cols, "vector length does not match the domain rank");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Moves the entries into `ring`; the first variables of `ring` must be the
    /// variables of the current ring.
    pub fn base_change(&self, ring: &Arc<Ring>) -> Result<FreeModuleMap> {
        let n = self.ring.nvars();
        if ring.nvars() < n || ring.vars()[..n] != self.ring.vars()[..] {
            return Err(Error::RingMismatch("target ring does not extend the source ring".into()));
        }
        let extra = ring.nvars() - n;
        Ok(FreeModuleMap {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.extend_vars(extra)).collect(),
        })
    }

    /// Reinterprets the entries in another ring of the same arity.
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Result<FreeModuleMap> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch("rings of different arity".into()));
        }
        Ok(FreeModuleMap { ring: ring.clone(), ..self.clone() })
    }

    pub fn to_literals(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.ring.format(self.get(i, j))).collect()).collect()
    }
}

impl fmt::Debug for FreeModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeModuleMap{}x{}{:?}", self.rows, self.cols, self.to_literals())
    }
}
