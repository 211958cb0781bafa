//! Truncated full Fock space over finitely many generators, left and right
//! creation/annihilation operators, and the operator model of a compound
//! bi-free Poisson pair built from them.

mod basis;
mod operator;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

pub use basis::{FockBasis, FockVector};
pub use operator::{annihilation, creation, vacuum_moment, Elementary, SparseOperator};

use crate::bnc::{Side, DEFAULT_PARTITION_CAP};
use crate::cbp::CbpSpec;
use crate::cumulants::{kappa_from_moments, Alphabet, MomentFunctional};
use crate::error::{Error, Result};

/// Moment `phi(a_1^p a_2^q)` of a commuting pair, checked to be a function of
/// the letter counts only.
#[derive(Debug, Clone)]
pub struct CommutingPair {
    /// `powers[p][q] = phi(a_1^p a_2^q)` for `p + q <= cap`.
    powers: Vec<Vec<f64>>,
}

impl CommutingPair {
    pub fn from_jump_law(jump: &MomentFunctional) -> Result<Self> {
        let ab = jump.alphabet();
        if ab.left_count() != 1 || ab.right_count() != 1 {
            return Err(Error::InvalidParameter(
                "the Fock model needs exactly one left and one right variable".into(),
            ));
        }
        let cap = jump.degree_cap();
        let powers: Vec<Vec<f64>> = (0..=cap)
            .map(|p| {
                (0..=cap - p)
                    .map(|q| {
                        let letters: Vec<usize> = std::iter::repeat_n(0, p).chain(std::iter::repeat_n(1, q)).collect();
                        jump.value(&letters).unwrap()
                    })
                    .collect()
            })
            .collect();
        for (word, value) in jump.entries() {
            let p = word.letters().iter().filter(|&&v| v == 0).count();
            let q = word.len() - p;
            let want = powers[p][q];
            if (value - want).abs() > 1e-12 * want.abs().max(1.0) {
                return Err(Error::NonCommuting(format!(
                    "moment of {} is {value} but the sorted word has {want}",
                    ab.render(&word)
                )));
            }
        }
        Ok(CommutingPair { powers })
    }

    pub fn degree_cap(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn moment(&self, p: usize, q: usize) -> f64 {
        self.powers[p][q]
    }
}

/// Smallest truncation depth for which every moment of `W`-words of length
/// `<= max_m` is computed exactly.
pub fn required_depth(n_trunc: usize, max_m: usize) -> usize {
    max_m * (n_trunc + 1)
}

/// `W_l = l_1^* + sum_{n<=N} sum_alpha lambda phi(a_alpha(1)..a_alpha(n) a_1) l_alpha(n)..l_alpha(1)`
/// and its right mirror `W_r` built from `r_2^*` and right creations with
/// coefficients `lambda phi(a_alpha(1)..a_alpha(n) a_2)`. Generator 1 carries
/// the left variable and generator 2 the right one.
pub fn build_w_operators(
    spec: &CbpSpec,
    n_trunc: usize,
    basis: &Arc<FockBasis>,
) -> Result<(SparseOperator, SparseOperator)> {
    if basis.dim() != 2 {
        return Err(Error::InvalidParameter("the Fock model uses two generators".into()));
    }
    if basis.depth() < n_trunc + 1 {
        return Err(Error::DepthTooSmall {
            depth: basis.depth(),
            required: n_trunc + 1,
        });
    }
    let pair = CommutingPair::from_jump_law(spec.jump_law())?;
    if pair.degree_cap() < n_trunc + 1 {
        return Err(Error::DegreeOverflow {
            len: n_trunc + 1,
            cap: pair.degree_cap(),
        });
    }
    let lambda = spec.lambda();
    let build = |side: Side, own: usize| -> Result<SparseOperator> {
        let mut op = annihilation(basis, side, own)?;
        for n in 0..=n_trunc {
            for alpha in 0..1usize << n {
                // Bit k of `alpha` selects generator alpha(k + 1).
                let letters: Vec<usize> = (0..n).map(|k| 1 + (alpha >> k & 1)).collect();
                let ones = letters.iter().filter(|&&g| g == 1).count() + usize::from(own == 1);
                let twos = n + 1 - ones;
                let coefficient = lambda * pair.moment(ones, twos);
                let factors = letters.iter().rev().map(|&g| Elementary::Create(side, g)).collect();
                op = op.plus(&SparseOperator::monomial(basis.clone(), coefficient, factors))?;
            }
        }
        Ok(op)
    };
    Ok((build(Side::Left, 1)?, build(Side::Right, 2)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockRow {
    pub word: String,
    pub chi: String,
    pub omega_moment: f64,
    pub kappa_empirical: f64,
    pub kappa_target: f64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockReport {
    pub lambda: f64,
    pub n_trunc: usize,
    pub max_m: usize,
    pub depth: usize,
    pub rows: Vec<FockRow>,
}

impl FockReport {
    pub fn max_abs_err(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_err).fold(0.0, f64::max)
    }

    /// Largest error over words of the given lengths.
    pub fn max_abs_err_where(&self, keep: impl Fn(usize) -> bool) -> f64 {
        self.rows
            .iter()
            .filter(|r| keep(r.chi.len()))
            .map(|r| r.abs_err)
            .fold(0.0, f64::max)
    }
}

/// Vacuum moments of every word in `W_l, W_r` of length `<= max_m`.
///
/// `omega(T_1 .. T_m) = <T_{k+1} .. T_m Omega, T_k^* .. T_1^* Omega>` with
/// `k = m / 2`; both half-vectors are memoized across words.
pub fn w_moments(spec: &CbpSpec, n_trunc: usize, max_m: usize, depth: usize) -> Result<MomentFunctional> {
    let basis = Arc::new(FockBasis::new(2, depth)?);
    let (wl, wr) = build_w_operators(spec, n_trunc, &basis)?;
    let ops = [wl, wr];
    let adjoints = [ops[0].adjoint(), ops[1].adjoint()];
    let mut suffixes: HashMap<Vec<usize>, FockVector> = HashMap::from([(Vec::new(), FockVector::vacuum())]);
    let mut prefixes = suffixes.clone();
    let alphabet = Alphabet::new(["W_l"], ["W_r"])?;
    MomentFunctional::from_fn(alphabet, max_m, |w| {
        let k = w.len() / 2;
        let (head, tail) = w.letters().split_at(k);
        let right = half_vector(&mut suffixes, tail, &|rest: &[usize]| (rest[0], &rest[1..]), &ops);
        let left = half_vector(&mut prefixes, head, &|rest: &[usize]| (rest[rest.len() - 1], &rest[..rest.len() - 1]), &adjoints);
        right.dot(&left)
    })
}

/// `ops[first] * vector(rest)`, where `split` picks the letter applied last.
fn half_vector(
    memo: &mut HashMap<Vec<usize>, FockVector>,
    letters: &[usize],
    split: &dyn Fn(&[usize]) -> (usize, &[usize]),
    ops: &[SparseOperator; 2],
) -> FockVector {
    if let Some(v) = memo.get(letters) {
        return v.clone();
    }
    let (first, rest) = split(letters);
    let inner = half_vector(memo, rest, split, ops);
    let v = ops[first].apply(&inner);
    memo.insert(letters.to_vec(), v.clone());
    v
}

/// Computes vacuum moments of all `W`-words of length `<= max_m`, inverts them
/// to bi-free cumulants and compares with `lambda phi(a_1^p a_2^q)` for
/// `m <= N` and with zero for longer words.
pub fn verify_fock_cumulants(spec: &CbpSpec, n_trunc: usize, max_m: usize, depth: Option<usize>) -> Result<FockReport> {
    if max_m == 0 || max_m > DEFAULT_PARTITION_CAP {
        return Err(Error::SizeLimit {
            n: max_m,
            cap: DEFAULT_PARTITION_CAP,
        });
    }
    let required = required_depth(n_trunc, max_m);
    let depth = depth.unwrap_or(required);
    if depth < required {
        return Err(Error::DepthTooSmall { depth, required });
    }
    let pair = CommutingPair::from_jump_law(spec.jump_law())?;
    let moments = w_moments(spec, n_trunc, max_m, depth)?;
    let kappa = kappa_from_moments(&moments)?;
    let rows = kappa
        .entries()
        .map(|(word, k)| {
            let p = word.letters().iter().filter(|&&v| v == 0).count();
            let q = word.len() - p;
            let target = if word.len() <= n_trunc {
                spec.lambda() * pair.moment(p, q)
            } else {
                0.0
            };
            FockRow {
                word: moments.alphabet().render(&word),
                chi: word.letters().iter().map(|&v| if v == 0 { 'l' } else { 'r' }).collect(),
                omega_moment: moments.get(&word).unwrap(),
                kappa_empirical: k,
                kappa_target: target,
                abs_err: (k - target).abs(),
            }
        })
        .collect();
    Ok(FockReport {
        lambda: spec.lambda(),
        n_trunc,
        max_m,
        depth,
        rows,
    })
}
