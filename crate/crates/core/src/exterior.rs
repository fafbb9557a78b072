//! Basis of the exterior algebra on `n` generators and its two basic operators.

/// Subsets of `{0, .., n-1}`, ordered by size and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorBasis {
    n: usize,
    subsets: Vec<Vec<usize>>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Self {
        let mut subsets: Vec<Vec<usize>> =
            (0u64..1 << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        ExteriorBasis { n, subsets }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, k: usize) -> &[usize] {
        &self.subsets[k]
    }

    /// Basis indices of `Lambda^q`.
    pub fn degree(&self, q: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.subsets[k].len() == q).collect()
    }

    /// Basis indices of the even (`odd = false`) or odd part.
    pub fn parity(&self, odd: bool) -> Vec<usize> {
        (0..self.len()).filter(|&k| (self.subsets[k].len() % 2 == 1) == odd).collect()
    }

    pub fn index_of(&self, subset: &[usize]) -> usize {
        self.subsets.iter().position(|s| s == subset).expect("subset of the generators")
    }

    /// `e_i ^ e_J = sign * e_K`, or `None` if `i` is in `J`.
    pub fn wedge(&self, i: usize, k: usize) -> Option<(i64, usize)> {
        let j = &self.subsets[k];
        if j.contains(&i) {
            return None;
        }
        let before = j.iter().filter(|&&x| x < i).count();
        let mut out = j.clone();
        out.insert(before, i);
        Some((if before % 2 == 0 { 1 } else { -1 }, self.index_of(&out)))
    }

    /// `iota_i e_J = sign * e_K`, or `None` if `i` is not in `J`.
    pub fn contract(&self, i: usize, k: usize) -> Option<(i64, usize)> {
        let j = &self.subsets[k];
        let pos = j.iter().position(|&x| x == i)?;
        let mut out = j.clone();
        out.remove(pos);
        Some((if pos % 2 == 0 { 1 } else { -1 }, self.index_of(&out)))
    }
}
