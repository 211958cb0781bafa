use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Words of length `<= depth` over generators `1..=dim`, i.e. the truncated
/// full Fock space. A word of length `L` with letters `w_1..w_L` sits at
/// `offset(L) + sum_k (w_k - 1) dim^(L - k)`; the vacuum is position 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    dim: usize,
    depth: usize,
    /// `offsets[L]` is the first position of length `L`; `offsets[depth + 1]` is the size.
    offsets: Vec<u64>,
    /// `powers[L] = dim^L`.
    powers: Vec<u64>,
}

impl FockBasis {
    pub fn new(dim: usize, depth: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("Fock space needs at least one generator".into()));
        }
        let overflow = || Error::Budget(format!("{dim} generators to depth {depth} overflow the index range"));
        let mut powers = vec![1u64];
        let mut offsets = vec![0u64];
        for len in 0..=depth {
            let count = powers[len];
            offsets.push(offsets[len].checked_add(count).ok_or_else(overflow)?);
            powers.push(count.checked_mul(dim as u64).ok_or_else(overflow)?);
        }
        Ok(FockBasis {
            dim,
            depth,
            offsets,
            powers,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of basis vectors, `(dim^(depth+1) - 1) / (dim - 1)` or `depth + 1`.
    pub fn size(&self) -> u64 {
        self.offsets[self.depth + 1]
    }

    pub fn index_of(&self, word: &[usize]) -> Result<u64> {
        if word.len() > self.depth {
            return Err(Error::DegreeOverflow {
                len: word.len(),
                cap: self.depth,
            });
        }
        let mut value = 0u64;
        for &g in word {
            self.check_generator(g)?;
            value = value * self.dim as u64 + (g - 1) as u64;
        }
        Ok(self.offsets[word.len()] + value)
    }

    pub fn word_of(&self, index: u64) -> Vec<usize> {
        let (len, mut value) = self.split(index);
        let mut word = vec![0; len];
        for slot in word.iter_mut().rev() {
            *slot = (value % self.dim as u64) as usize + 1;
            value /= self.dim as u64;
        }
        word
    }

    pub(crate) fn check_generator(&self, g: usize) -> Result<()> {
        if g == 0 || g > self.dim {
            return Err(Error::InvalidParameter(format!(
                "generator {g} outside 1..={}",
                self.dim
            )));
        }
        Ok(())
    }

    /// Length and base-`dim` value of the word at `index`.
    #[inline]
    pub(crate) fn split(&self, index: u64) -> (usize, u64) {
        let len = self.offsets.partition_point(|&o| o <= index) - 1;
        (len, index - self.offsets[len])
    }

    #[inline]
    pub(crate) fn join(&self, len: usize, value: u64) -> u64 {
        self.offsets[len] + value
    }

    #[inline]
    pub(crate) fn power(&self, len: usize) -> u64 {
        self.powers[len]
    }
}

/// Sparse real vector on a [`FockBasis`], keyed by basis position.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FockVector(pub(crate) BTreeMap<u64, f64>);

impl FockVector {
    pub fn zero() -> Self {
        FockVector(BTreeMap::new())
    }

    pub fn vacuum() -> Self {
        FockVector::basis_vector(0)
    }

    pub fn basis_vector(index: u64) -> Self {
        FockVector(BTreeMap::from([(index, 1.0)]))
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u64, f64)>) -> Self {
        let mut v = FockVector::zero();
        for (i, x) in entries {
            v.add(i, x);
        }
        v
    }

    pub fn get(&self, index: u64) -> f64 {
        self.0.get(&index).copied().unwrap_or(0.0)
    }

    pub fn add(&mut self, index: u64, x: f64) {
        if x != 0.0 {
            *self.0.entry(index).or_insert(0.0) += x;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.0.iter().map(|(&i, &x)| (i, x))
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &FockVector) -> f64 {
        self.iter().map(|(i, x)| x * other.get(i)).sum()
    }

    pub fn max_abs_diff(&self, other: &FockVector) -> f64 {
        let a = self.iter().map(|(i, x)| (x - other.get(i)).abs());
        let b = other.iter().filter(|(i, _)| !self.0.contains_key(i)).map(|(_, x)| x.abs());
        a.chain(b).fold(0.0, f64::max)
    }
}
