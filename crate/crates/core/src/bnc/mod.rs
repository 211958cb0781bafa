//! Non-crossing and bi-non-crossing partitions of `{1..n}`.
//!
//! `NC(n)` is generated directly from the Catalan recursion on the block of
//! the first element. A side pattern `chi` induces the permutation `s_chi`
//! (left positions ascending, then right positions descending) and
//! `BNC(n, chi)` is the image of `NC(n)` under it. The image map is a lattice
//! isomorphism, so Möbius values on `BNC(n, chi)` are read off the preimage.

mod chi;
mod mobius;
mod partition;

use std::sync::{Arc, OnceLock};

pub use chi::{parse_sides, s_chi_of, sides_string, BncPartition, ChiShape, Side};
pub use mobius::{catalan, kreweras_complement, mobius_nc, mobius_to_top};
pub use partition::{ker_map, SetPartition};

use crate::error::{Error, Result};

/// Largest ground-set size accepted by the enumerators by default.
/// `Catalan(12) = 208012` partitions.
pub const DEFAULT_PARTITION_CAP: usize = 12;

/// Enumerates `NC(n)` in canonical form, sorted, for `1 <= n <= 12`.
pub fn enumerate_nc(n: usize) -> Result<Vec<SetPartition>> {
    enumerate_nc_capped(n, DEFAULT_PARTITION_CAP)
}

pub fn enumerate_nc_capped(n: usize, cap: usize) -> Result<Vec<SetPartition>> {
    check_size(n, cap)?;
    let mut out: Vec<SetPartition> = nc_blocks(n)
        .into_iter()
        .map(|blocks| SetPartition::from_blocks_unchecked(n, blocks))
        .collect();
    out.sort();
    Ok(out)
}

/// Enumerates `BNC(n, chi)` as the image of `NC(n)` under `s_chi`.
pub fn enumerate_bnc(shape: &ChiShape) -> Result<Vec<BncPartition>> {
    enumerate_bnc_capped(shape, DEFAULT_PARTITION_CAP)
}

pub fn enumerate_bnc_capped(shape: &ChiShape, cap: usize) -> Result<Vec<BncPartition>> {
    Ok(enumerate_nc_capped(shape.n(), cap)?
        .iter()
        .map(|pi| BncPartition::from_noncrossing(shape, pi))
        .collect())
}

fn check_size(n: usize, cap: usize) -> Result<()> {
    if n == 0 || n > cap {
        return Err(Error::SizeLimit { n, cap });
    }
    Ok(())
}

/// Non-crossing partitions of `{1..n}` as raw block lists (one-based).
///
/// Either `1` is a singleton and the rest is any element of `NC(n-1)`, or the
/// next element of the block of `1` is `j`; then `{2..j-1}` carries a closed
/// non-crossing partition and `1` joins the block of `j` in an element of
/// `NC({j..n})`.
fn nc_blocks(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut levels: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new()]];
    for len in 1..=n {
        let mut level = Vec::new();
        for rest in &levels[len - 1] {
            let mut blocks = vec![vec![1]];
            blocks.extend(shifted(rest, 1));
            level.push(blocks);
        }
        for j in 2..=len {
            for inner in &levels[j - 2] {
                for tail in &levels[len - j + 1] {
                    // Blocks stay sorted by minimum: the block of j comes
                    // first in `tail` and absorbs 1.
                    let mut tail_blocks = shifted(tail, j - 1).into_iter();
                    let mut first = tail_blocks.next().expect("tail is nonempty");
                    first.insert(0, 1);
                    let mut blocks = vec![first];
                    blocks.extend(shifted(inner, 1));
                    blocks.extend(tail_blocks);
                    level.push(blocks);
                }
            }
        }
        levels.push(level);
    }
    levels.swap_remove(n)
}

fn shifted(blocks: &[Vec<usize>], offset: usize) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|&x| x + offset).collect())
        .collect()
}

/// `NC(n)` in zero-based position form together with `mu(pi, 1_n)`, shared
/// across threads. Used by the cumulant transforms.
#[derive(Debug)]
pub struct NcLevel {
    pub n: usize,
    /// Blocks as zero-based positions, each sorted ascending.
    pub partitions: Vec<Vec<Vec<usize>>>,
    pub mobius_to_top: Vec<i64>,
}

static NC_LEVELS: [OnceLock<Arc<NcLevel>>; DEFAULT_PARTITION_CAP + 1] =
    [const { OnceLock::new() }; DEFAULT_PARTITION_CAP + 1];

/// Cached `NC(n)` with Möbius weights, for `1 <= n <= 12`.
pub fn nc_level(n: usize) -> Result<Arc<NcLevel>> {
    check_size(n, DEFAULT_PARTITION_CAP)?;
    Ok(NC_LEVELS[n]
        .get_or_init(|| {
            let parts = enumerate_nc(n).expect("size already checked");
            let mobius_to_top = parts.iter().map(mobius_to_top).collect();
            let partitions = parts
                .iter()
                .map(|p| {
                    p.blocks()
                        .iter()
                        .map(|b| b.iter().map(|&x| x - 1).collect())
                        .collect()
                })
                .collect();
            Arc::new(NcLevel {
                n,
                partitions,
                mobius_to_top,
            })
        })
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// All set partitions via restricted growth strings.
    fn all_partitions(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        loop {
            let k = rgs.iter().max().unwrap() + 1;
            let mut blocks = vec![Vec::new(); k];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i + 1);
            }
            out.push(SetPartition::new(n, blocks).unwrap());
            // next restricted growth string
            let mut i = n - 1;
            loop {
                if i == 0 {
                    return out;
                }
                let prefix_max = *rgs[..i].iter().max().unwrap();
                if rgs[i] <= prefix_max {
                    rgs[i] += 1;
                    for x in rgs.iter_mut().skip(i + 1) {
                        *x = 0;
                    }
                    break;
                }
                i -= 1;
            }
        }
    }

    #[test]
    fn brute_force_partition_counts() {
        let bell = [1, 2, 5, 15, 52, 203, 877];
        for n in 1..=7 {
            assert_eq!(all_partitions(n).len(), bell[n - 1]);
        }
    }

    #[test]
    fn enumeration_matches_brute_force_filter() {
        for n in 1..=8 {
            let brute: BTreeSet<SetPartition> = all_partitions(n)
                .into_iter()
                .filter(SetPartition::is_noncrossing)
                .collect();
            let fast: BTreeSet<SetPartition> = enumerate_nc(n).unwrap().into_iter().collect();
            assert_eq!(brute, fast, "n = {n}");
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(enumerate_nc(1).unwrap(), vec![SetPartition::one(1)]);
        assert_eq!(enumerate_nc(3).unwrap().len(), 5);
        let nc4 = enumerate_nc(4).unwrap();
        assert_eq!(nc4.len(), 14);
        let crossing = SetPartition::new(4, vec![vec![1, 3], vec![2, 4]]).unwrap();
        assert!(!nc4.contains(&crossing));
    }

    #[test]
    fn counts_are_catalan_and_unique() {
        for n in 1..=10 {
            let list = enumerate_nc(n).unwrap();
            let set: BTreeSet<_> = list.iter().cloned().collect();
            assert_eq!(set.len(), list.len());
            assert_eq!(list.len() as u128, catalan(n));
            assert!(list.iter().all(SetPartition::is_noncrossing));
        }
    }

    #[test]
    fn size_limits() {
        assert_eq!(enumerate_nc(0), Err(Error::SizeLimit { n: 0, cap: 12 }));
        assert_eq!(enumerate_nc(13), Err(Error::SizeLimit { n: 13, cap: 12 }));
        assert!(enumerate_nc_capped(5, 4).is_err());
    }

    #[test]
    fn bnc_examples() {
        let shape = s_chi_of(&parse_sides("lr").unwrap()).unwrap();
        let parts: Vec<SetPartition> = enumerate_bnc(&shape)
            .unwrap()
            .into_iter()
            .map(|b| b.partition().clone())
            .collect();
        assert_eq!(parts.len(), 2);
        assert!(parts.contains(&SetPartition::zero(2)));
        assert!(parts.contains(&SetPartition::one(2)));

        for sides in ["l", "r"] {
            let shape = s_chi_of(&parse_sides(sides).unwrap()).unwrap();
            let bnc = enumerate_bnc(&shape).unwrap();
            assert_eq!(bnc.len(), 1);
            assert_eq!(bnc[0].partition(), &SetPartition::one(1));
        }
        for sides in ["llll", "lrlr", "rrrr", "rlrl", "lrrl"] {
            let shape = s_chi_of(&parse_sides(sides).unwrap()).unwrap();
            assert_eq!(enumerate_bnc(&shape).unwrap().len(), 14);
        }
    }

    #[test]
    fn bnc_members_validate() {
        let shape = s_chi_of(&parse_sides("lrrlr").unwrap()).unwrap();
        for b in enumerate_bnc(&shape).unwrap() {
            BncPartition::new(shape.clone(), b.partition().clone()).unwrap();
        }
    }

    #[test]
    fn bnc_is_order_isomorphic_to_nc() {
        let nc = enumerate_nc(5).unwrap();
        for sides in ["lrlrl", "rrlll", "rlrrl"] {
            let shape = s_chi_of(&parse_sides(sides).unwrap()).unwrap();
            let images: Vec<SetPartition> = nc
                .iter()
                .map(|p| BncPartition::from_noncrossing(&shape, p).partition().clone())
                .collect();
            for (i, a) in nc.iter().enumerate() {
                for (j, b) in nc.iter().enumerate() {
                    assert_eq!(a.refines(b), images[i].refines(&images[j]));
                }
            }
        }
    }

    #[test]
    fn cached_level_matches_enumeration() {
        let level = nc_level(5).unwrap();
        assert_eq!(level.partitions.len(), 42);
        assert_eq!(level.mobius_to_top.len(), 42);
        assert!(nc_level(13).is_err());
    }
}
