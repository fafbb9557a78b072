//! Two-periodic complexes of free modules `C0 -d0-> C1 -d1-> C0`.

use std::sync::Arc;

use crate::curved::Parity;
use crate::error::{Error, Result};
use crate::groebner::{homology, reduce_entries, Budget, ModulePresentation, QDim};
use crate::matrix::FreeModuleMap;
use crate::poly::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Complex {
    ring: Arc<Ring>,
    d: [FreeModuleMap; 2],
}

/// Homology of a two-periodic complex, indexed by parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Homology {
    pub even: ModulePresentation,
    pub odd: ModulePresentation,
    pub dims: [QDim; 2],
}

impl Z2Homology {
    pub fn get(&self, p: Parity) -> &ModulePresentation {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }
}

impl Z2Complex {
    /// `d0: C0 -> C1` and `d1: C1 -> C0`; both composites must vanish.
    pub fn new(d0: FreeModuleMap, d1: FreeModuleMap, budget: &Budget) -> Result<Self> {
        let c = Self::new_unchecked(d0, d1)?;
        for (a, b) in [(&c.d[0], &c.d[1]), (&c.d[1], &c.d[0])] {
            let prod = reduce_entries(&b.mul(a)?, budget)?;
            let bad = prod.entries().find(|(_, _, p)| !p.is_zero()).map(|(i, j, p)| (i, j, c.ring.format(p)));
            if let Some((row, col, value)) = bad {
                return Err(Error::NonzeroComposition { row, col, value });
            }
        }
        Ok(c)
    }

    pub(crate) fn new_unchecked(d0: FreeModuleMap, d1: FreeModuleMap) -> Result<Self> {
        if d0.ring() != d1.ring() {
            return Err(Error::RingMismatch("differentials over different rings".into()));
        }
        if d0.rows() != d1.cols() || d1.rows() != d0.cols() {
            return Err(Error::Shape("differentials do not form a two-periodic complex".into()));
        }
        Ok(Z2Complex { ring: d0.ring().clone(), d: [d0, d1] })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self, p: Parity) -> usize {
        self.d[p.index()].cols()
    }

    /// The differential leaving the given parity.
    pub fn d(&self, from: Parity) -> &FreeModuleMap {
        &self.d[from.index()]
    }

    /// Even part `ker d0 / im d1`, odd part `ker d1 / im d0`, computed concurrently.
    pub fn homology(&self, budget: &Budget) -> Result<Z2Homology> {
        let [d0, d1] = &self.d;
        let (even, odd) = std::thread::scope(|s| {
            let odd = s.spawn(|| homology(d0, d1, budget));
            let even = homology(d1, d0, budget);
            (even, odd.join().expect("homology worker panicked"))
        });
        let (even, odd) = (even?, odd?);
        let dims = [even.q_dimension(budget)?, odd.q_dimension(budget)?];
        Ok(Z2Homology { even, odd, dims })
    }

    /// The same complex with its entries moved into a ring extending this one.
    pub fn base_change(&self, ring: &Arc<Ring>) -> Result<Z2Complex> {
        Z2Complex::new_unchecked(self.d[0].base_change(ring)?, self.d[1].base_change(ring)?)
    }
}
