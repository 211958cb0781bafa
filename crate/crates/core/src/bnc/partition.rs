use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `{1, ..., n}` kept in canonical form: every block sorted
/// ascending, blocks ordered by their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes a list of blocks over `{1, ..., n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedPartition("ground set must be nonempty".into()));
        }
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::MalformedPartition("empty block".into()));
            }
            for &x in block.iter() {
                if x == 0 || x > n {
                    return Err(Error::MalformedPartition(format!(
                        "element {x} outside 1..={n}"
                    )));
                }
                if seen[x] {
                    return Err(Error::MalformedPartition(format!("element {x} repeated")));
                }
                seen[x] = true;
            }
            block.sort_unstable();
        }
        if let Some(missing) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::MalformedPartition(format!("element {missing} not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// Builds from blocks already known to partition `{1..n}`; only sorts.
    pub(crate) fn from_blocks_unchecked(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    /// The all-singletons partition `0_n`.
    pub fn zero(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|x| vec![x]).collect(),
        }
    }

    /// The one-block partition `1_n`.
    pub fn one(n: usize) -> Self {
        SetPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of each element; `labels[x - 1]` is the block holding `x`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x - 1] = b;
            }
        }
        labels
    }

    /// Stack scan: a partition is non-crossing iff every revisited block is
    /// the most recently opened one still open.
    pub fn is_noncrossing(&self) -> bool {
        let labels = self.labels();
        let mut last = vec![0; self.blocks.len()];
        for (pos, &b) in labels.iter().enumerate() {
            last[b] = pos;
        }
        let mut opened = vec![false; self.blocks.len()];
        let mut stack: Vec<usize> = Vec::new();
        for (pos, &b) in labels.iter().enumerate() {
            if opened[b] {
                if stack.last() != Some(&b) {
                    return false;
                }
                if last[b] == pos {
                    stack.pop();
                }
            } else {
                opened[b] = true;
                if last[b] != pos {
                    stack.push(b);
                }
            }
        }
        true
    }

    /// Refinement order: `self <= other` iff every block of `self` lies
    /// inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let outer = other.labels();
        self.blocks
            .iter()
            .all(|block| block.iter().all(|&x| outer[x - 1] == outer[block[0] - 1]))
    }

    /// Image of the partition under a permutation of `{1..n}`:
    /// each block `V` becomes `{perm(t) : t in V}`. `perm` is one-based.
    pub fn permute(&self, perm: &[usize]) -> SetPartition {
        assert_eq!(perm.len(), self.n, "permutation length must match n");
        let blocks = self
            .blocks
            .iter()
            .map(|block| block.iter().map(|&t| perm[t - 1]).collect())
            .collect();
        SetPartition::from_blocks_unchecked(self.n, blocks)
    }

    /// Restriction to a subset `w` (sorted ascending), relabelled to
    /// `{1..|w|}` in the induced order.
    pub fn restrict(&self, w: &[usize]) -> SetPartition {
        let mut rank = vec![0; self.n + 1];
        for (i, &x) in w.iter().enumerate() {
            rank[x] = i + 1;
        }
        let blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| rank[x]).filter(|&r| r != 0).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        SetPartition::from_blocks_unchecked(w.len(), blocks)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Level-set partition of a map `{1..n} -> indices`: `p ~ q` iff `alpha(p) == alpha(q)`.
pub fn ker_map<T: PartialEq>(alpha: &[T]) -> Result<SetPartition> {
    if alpha.is_empty() {
        return Err(Error::MalformedPartition("map on an empty domain".into()));
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<&T> = Vec::new();
    for (pos, value) in alpha.iter().enumerate() {
        match reps.iter().position(|r| *r == value) {
            Some(b) => blocks[b].push(pos + 1),
            None => {
                reps.push(value);
                blocks.push(vec![pos + 1]);
            }
        }
    }
    Ok(SetPartition::from_blocks_unchecked(alpha.len(), blocks))
}
