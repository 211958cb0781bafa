use std::collections::HashMap;
use std::sync::Arc;

use super::table::{CumulantTable, MomentFunctional, Word, WordTable};
use crate::bnc::{nc_level, s_chi_of, BncPartition, SetPartition, Side};
use crate::error::{Error, Result};

/// One element of `BNC(n, chi)`: blocks as zero-based positions (each sorted
/// ascending) and `mu(s_chi^{-1} o sigma, 1_n)`.
struct BncTerm {
    blocks: Vec<Vec<usize>>,
    mobius: f64,
}

/// `BNC(n, chi)` per side pattern, built on demand.
#[derive(Default)]
struct BncCache {
    by_pattern: HashMap<Vec<Side>, Arc<Vec<BncTerm>>>,
}

impl BncCache {
    fn terms(&mut self, sides: &[Side]) -> Result<Arc<Vec<BncTerm>>> {
        if let Some(t) = self.by_pattern.get(sides) {
            return Ok(t.clone());
        }
        let level = nc_level(sides.len())?;
        let shape = s_chi_of(sides)?;
        let s = shape.s_chi();
        let terms: Vec<BncTerm> = level
            .partitions
            .iter()
            .zip(&level.mobius_to_top)
            .map(|(blocks, &mu)| BncTerm {
                blocks: blocks
                    .iter()
                    .map(|b| {
                        let mut image: Vec<usize> = b.iter().map(|&t| s[t] - 1).collect();
                        image.sort_unstable();
                        image
                    })
                    .collect(),
                mobius: mu as f64,
            })
            .collect();
        let terms = Arc::new(terms);
        self.by_pattern.insert(sides.to_vec(), terms.clone());
        Ok(terms)
    }
}

/// Product over blocks of the table value at the block's subword, positions
/// read in increasing order.
#[inline]
fn block_product(table: &WordTable, letters: &[usize], blocks: &[Vec<usize>]) -> f64 {
    let k = table.alphabet().len();
    let mut prod = 1.0;
    for block in blocks {
        let idx = block.iter().fold(0, |acc, &p| acc * k + letters[p]);
        prod *= table.value_at(block.len(), idx);
        if prod == 0.0 {
            break;
        }
    }
    prod
}

fn check_len(word: &Word, cap: usize) -> Result<()> {
    if word.len() > cap {
        return Err(Error::DegreeOverflow {
            len: word.len(),
            cap,
        });
    }
    if word.is_empty() {
        return Err(Error::InvalidParameter("word must be nonempty".into()));
    }
    Ok(())
}

/// `phi_pi(word) = prod_{V in pi} phi(word restricted to V)`.
pub fn phi_pi(phi: &MomentFunctional, word: &Word, pi: &SetPartition) -> Result<f64> {
    phi.alphabet().check_word(word)?;
    check_len(word, phi.degree_cap())?;
    if pi.n() != word.len() {
        return Err(Error::Shape(format!(
            "partition on {} points for a word of length {}",
            pi.n(),
            word.len()
        )));
    }
    let blocks: Vec<Vec<usize>> = pi
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&x| x - 1).collect())
        .collect();
    Ok(block_product(phi.table(), word.letters(), &blocks))
}

/// `kappa_{chi, sigma}(word) = prod_{V in sigma} kappa(word restricted to V)`.
pub fn kappa_chi_pi(kappa: &CumulantTable, word: &Word, sigma: &BncPartition) -> Result<f64> {
    kappa.alphabet().check_word(word)?;
    check_len(word, kappa.degree_cap())?;
    let sides = kappa.alphabet().sides_of(word);
    if sigma.shape().sides() != sides.as_slice() {
        return Err(Error::Shape(format!(
            "partition is bi-non-crossing for a different side pattern ({} vs {})",
            crate::bnc::sides_string(sigma.shape().sides()),
            crate::bnc::sides_string(&sides)
        )));
    }
    let blocks: Vec<Vec<usize>> = sigma
        .partition()
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&x| x - 1).collect())
        .collect();
    Ok(block_product(kappa.table(), word.letters(), &blocks))
}

fn transform(source: &WordTable, use_mobius: bool) -> Result<Vec<Vec<f64>>> {
    let cap = source.degree_cap();
    let mut cache = BncCache::default();
    let mut rows = vec![vec![0.0]];
    for len in 1..=cap {
        let mut row = Vec::new();
        for word in source.words_of_len(len) {
            let sides = source.alphabet().sides_of(&word);
            let terms = cache.terms(&sides)?;
            let value: f64 = terms
                .iter()
                .map(|t| {
                    let w = if use_mobius { t.mobius } else { 1.0 };
                    w * block_product(source, word.letters(), &t.blocks)
                })
                .sum();
            row.push(value);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Bi-free cumulants by Möbius inversion over `BNC(n, chi)`:
/// `kappa_chi(w) = sum_sigma phi_sigma(w) mu(s_chi^{-1} o sigma, 1_n)`.
pub fn kappa_from_moments(phi: &MomentFunctional) -> Result<CumulantTable> {
    let rows = transform(phi.table(), true)?;
    CumulantTable::from_fn(phi.alphabet().clone(), phi.degree_cap(), |w| {
        rows[w.len()][phi.table().index(w.letters())]
    })
}

/// Moments from bi-free cumulants: `phi(w) = sum_sigma kappa_{chi, sigma}(w)`.
pub fn moments_from_kappa(kappa: &CumulantTable) -> Result<MomentFunctional> {
    let rows = transform(kappa.table(), false)?;
    MomentFunctional::from_fn(kappa.alphabet().clone(), kappa.degree_cap(), |w| {
        rows[w.len()][kappa.table().index(w.letters())]
    })
}

/// Single-face free cumulant of the `s_chi`-reordered word,
/// `kappa_n(w_{s(1)}, ..., w_{s(n)}) = sum_{pi in NC(n)} phi_pi(w o s) mu(pi, 1_n)`.
///
/// On families where the reordering does not change any block moment this
/// equals the bi-free cumulant of `w`.
pub fn reorder_by_s_chi(phi: &MomentFunctional, word: &Word) -> Result<f64> {
    phi.alphabet().check_word(word)?;
    check_len(word, phi.degree_cap())?;
    let shape = s_chi_of(&phi.alphabet().sides_of(word))?;
    let reordered: Vec<usize> = shape.s_chi().iter().map(|&k| word.letters()[k - 1]).collect();
    let level = nc_level(word.len())?;
    Ok(level
        .partitions
        .iter()
        .zip(&level.mobius_to_top)
        .map(|(blocks, &mu)| mu as f64 * block_product(phi.table(), &reordered, blocks))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bnc::enumerate_bnc;
    use crate::cumulants::Alphabet;

    fn single(moments: &[f64]) -> MomentFunctional {
        let alpha = Alphabet::single_face(["x"]).unwrap();
        MomentFunctional::from_fn(alpha, moments.len(), |w| moments[w.len() - 1]).unwrap()
    }

    #[test]
    fn semicircle_cumulants() {
        let phi = single(&[0.0, 1.0, 0.0, 2.0]);
        let kappa = kappa_from_moments(&phi).unwrap();
        assert!(kappa.value(&[0]).unwrap().abs() < 1e-14);
        assert!((kappa.value(&[0, 0]).unwrap() - 1.0).abs() < 1e-14);
        assert!(kappa.value(&[0, 0, 0]).unwrap().abs() < 1e-14);
        assert!(kappa.value(&[0, 0, 0, 0]).unwrap().abs() < 1e-14);
    }

    #[test]
    fn poisson_first_two_cumulants() {
        let lambda = 0.7;
        let phi = single(&[lambda, lambda + lambda * lambda]);
        let kappa = kappa_from_moments(&phi).unwrap();
        assert!((kappa.value(&[0]).unwrap() - lambda).abs() < 1e-14);
        assert!((kappa.value(&[0, 0]).unwrap() - lambda).abs() < 1e-14);
    }

    #[test]
    fn first_cumulant_is_first_moment() {
        let alpha = Alphabet::new(["a"], ["b"]).unwrap();
        let phi = MomentFunctional::from_fn(alpha, 2, |w| w.len() as f64 + w.0[0] as f64 * 0.5).unwrap();
        let kappa = kappa_from_moments(&phi).unwrap();
        assert_eq!(kappa.value(&[0]), phi.value(&[0]));
        assert_eq!(kappa.value(&[1]), phi.value(&[1]));
    }

    #[test]
    fn pure_first_cumulant_gives_powers() {
        let c = 1.3;
        let alpha = Alphabet::single_face(["x"]).unwrap();
        let kappa = CumulantTable::from_fn(alpha, 5, |w| if w.len() == 1 { c } else { 0.0 }).unwrap();
        let phi = moments_from_kappa(&kappa).unwrap();
        for n in 1..=5 {
            let expected = c.powi(n as i32);
            assert!((phi.value(&vec![0; n]).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn two_faced_degree_two_moment() {
        let (lambda, alpha, beta) = (0.8, 1.5, -0.5);
        let ab = Alphabet::new(["a"], ["b"]).unwrap();
        let kappa = CumulantTable::from_fn(ab, 2, |w| match w.0.as_slice() {
            [0] => lambda * alpha,
            [1] => lambda * beta,
            [0, 1] => lambda * alpha * beta,
            _ => 0.0,
        })
        .unwrap();
        let phi = moments_from_kappa(&kappa).unwrap();
        let expected = lambda * alpha * beta + lambda * lambda * alpha * beta;
        assert!((phi.value(&[0, 1]).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn phi_pi_block_rule() {
        let alpha = Alphabet::single_face(["x", "y", "z"]).unwrap();
        let phi = MomentFunctional::from_fn(alpha, 3, |w| {
            w.0.iter().enumerate().map(|(i, &v)| (v + 1) as f64 * (i + 2) as f64).sum()
        })
        .unwrap();
        let w = Word(vec![0, 1, 2]);
        let pi = SetPartition::new(3, vec![vec![1, 3], vec![2]]).unwrap();
        let expected = phi.value(&[0, 2]).unwrap() * phi.value(&[1]).unwrap();
        assert_eq!(phi_pi(&phi, &w, &pi).unwrap(), expected);
        let one = phi_pi(&phi, &Word(vec![2]), &SetPartition::one(1)).unwrap();
        assert_eq!(one, phi.value(&[2]).unwrap());
        let zero = phi_pi(&phi, &Word(vec![0, 1]), &SetPartition::zero(2)).unwrap();
        assert_eq!(zero, phi.value(&[0]).unwrap() * phi.value(&[1]).unwrap());
        assert!(phi_pi(&phi, &w, &SetPartition::one(2)).is_err());
    }

    #[test]
    fn kappa_chi_pi_products() {
        let ab = Alphabet::new(["a"], ["b"]).unwrap();
        let kappa = CumulantTable::from_fn(ab.clone(), 3, |w| {
            w.0.iter().map(|&v| v as f64 + 1.5).product::<f64>() + w.len() as f64
        })
        .unwrap();
        let w = Word(vec![0, 1, 0]);
        let shape = s_chi_of(&ab.sides_of(&w)).unwrap();
        let one = BncPartition::new(shape.clone(), SetPartition::one(3)).unwrap();
        assert_eq!(kappa_chi_pi(&kappa, &w, &one).unwrap(), kappa.value(&[0, 1, 0]).unwrap());
        let zero = BncPartition::new(shape.clone(), SetPartition::zero(3)).unwrap();
        let singles = kappa.value(&[0]).unwrap().powi(2) * kappa.value(&[1]).unwrap();
        assert!((kappa_chi_pi(&kappa, &w, &zero).unwrap() - singles).abs() < 1e-14);
        let mixed = BncPartition::new(
            shape,
            SetPartition::new(3, vec![vec![1, 2], vec![3]]).unwrap(),
        )
        .unwrap();
        let expected = kappa.value(&[0, 1]).unwrap() * kappa.value(&[0]).unwrap();
        assert_eq!(kappa_chi_pi(&kappa, &w, &mixed).unwrap(), expected);

        let wrong = s_chi_of(&[Side::Left; 3]).unwrap();
        let bad = BncPartition::new(wrong, SetPartition::one(3)).unwrap();
        assert!(matches!(kappa_chi_pi(&kappa, &w, &bad), Err(Error::Shape(_))));
    }

    #[test]
    fn moment_identity_sums_kappa_chi_pi() {
        // Moment-cumulant sum evaluated term by term through the public partition API.
        let ab = Alphabet::new(["a"], ["b"]).unwrap();
        let kappa = CumulantTable::from_fn(ab.clone(), 4, |w| {
            0.3 + 0.1 * w.len() as f64 - 0.2 * w.0.iter().sum::<usize>() as f64
        })
        .unwrap();
        let phi = moments_from_kappa(&kappa).unwrap();
        for (w, value) in phi.entries() {
            let shape = s_chi_of(&ab.sides_of(&w)).unwrap();
            let total: f64 = enumerate_bnc(&shape)
                .unwrap()
                .iter()
                .map(|s| kappa_chi_pi(&kappa, &w, s).unwrap())
                .sum();
            assert!((total - value).abs() < 1e-12);
        }
    }

    #[test]
    fn reorder_matches_on_all_left_words() {
        let alpha = Alphabet::single_face(["x", "y"]).unwrap();
        let phi = MomentFunctional::from_fn(alpha, 4, |w| {
            w.0.iter().enumerate().map(|(i, &v)| ((i + 1) * (v + 2)) as f64).sum::<f64>().sin()
        })
        .unwrap();
        let kappa = kappa_from_moments(&phi).unwrap();
        for (w, value) in kappa.entries() {
            assert!((reorder_by_s_chi(&phi, &w).unwrap() - value).abs() < 1e-12);
        }
    }

    #[test]
    fn overflow_errors() {
        let phi = single(&[0.0, 1.0]);
        assert!(matches!(
            reorder_by_s_chi(&phi, &Word(vec![0, 0, 0])),
            Err(Error::DegreeOverflow { .. })
        ));
        assert!(phi_pi(&phi, &Word(vec![0, 0, 0]), &SetPartition::one(3)).is_err());
    }
}
