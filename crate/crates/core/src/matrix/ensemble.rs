use nalgebra::Complex;

use super::diagonal::JointAtoms;
use super::rng::{stream_rng, GUE_STREAM, HAAR_STREAM_BASE};
use super::sampling::{mul, sample_gue, sample_haar_unitary, CMatrix};
use crate::error::{Error, Result};

/// Configuration of a Monte Carlo run over a grid of matrix sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub lambda: f64,
    pub law: JointAtoms,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub max_word_len: usize,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {}", self.lambda)));
        }
        if self.sizes.is_empty() || self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("sizes must be nonempty and strictly ascending".into()));
        }
        if self.sizes[0] == 0 {
            return Err(Error::InvalidParameter("matrix sizes must be positive".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.max_word_len == 0 || self.max_word_len > crate::bnc::DEFAULT_PARTITION_CAP {
            return Err(Error::SizeLimit {
                n: self.max_word_len,
                cap: crate::bnc::DEFAULT_PARTITION_CAP,
            });
        }
        for &n in &self.sizes {
            if Layout::new(self.lambda, n).p == 0 {
                return Err(Error::InvalidParameter(format!(
                    "size {n} is too small for lambda = {}: the compressed block is empty",
                    self.lambda
                )));
            }
        }
        Ok(())
    }
}

/// Block sizes of the model at dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layout {
    /// Number of unpadded Haar-rotated copies (`floor(lambda)` when `lambda > 1`).
    pub k: usize,
    pub delta: f64,
    /// Nonzero block of the padded family `B~` (`floor(lambda n)` for
    /// `lambda <= 1`, `n` otherwise).
    pub p: usize,
    /// Nonzero block of the remainder family `C~`, `floor(delta n)`.
    pub delta_p: usize,
}

impl Layout {
    pub fn new(lambda: f64, n: usize) -> Self {
        if lambda <= 1.0 {
            let p = if lambda == 1.0 { n } else { (lambda * n as f64).floor() as usize };
            Layout {
                k: 0,
                delta: 0.0,
                p,
                delta_p: 0,
            }
        } else {
            let k = lambda.floor() as usize;
            let delta = lambda - k as f64;
            Layout {
                k,
                delta,
                p: n,
                delta_p: (delta * n as f64).floor() as usize,
            }
        }
    }

    /// Haar unitaries the model draws.
    pub fn unitaries(&self) -> usize {
        if self.k == 0 {
            0
        } else {
            self.k + usize::from(self.delta_p > 0)
        }
    }
}

/// One trial of the model at one size.
#[derive(Debug, Clone)]
pub struct RealizedEnsemble {
    pub n: usize,
    pub layout: Layout,
    pub x: CMatrix,
    /// Diagonals of `B~(n, i)`: quantile block of length `p`, then zeros.
    pub b_tilde: Vec<Vec<f64>>,
    /// Diagonals of `C~(n, i)` when `lambda > 1` and `floor(delta n) > 0`.
    pub c_tilde: Option<Vec<Vec<f64>>>,
    pub unitaries: Vec<CMatrix>,
    /// `Y_i`, one per variable of the law.
    pub models: Vec<CMatrix>,
}

fn padded(law: &JointAtoms, p: usize, n: usize) -> Vec<Vec<f64>> {
    law.quantile_diagonals(p)
        .into_iter()
        .map(|mut d| {
            d.resize(n, 0.0);
            d
        })
        .collect()
}

/// `V diag(d) V^*`.
fn conjugate_diagonal(v: &CMatrix, d: &[f64]) -> CMatrix {
    let mut scaled = v.clone();
    for (j, &x) in d.iter().enumerate() {
        scaled.column_mut(j).scale_mut(x);
    }
    mul(&scaled, &v.adjoint())
}

/// Draws trial `trial` of the model at size `n`:
/// `Y_i = X B~_i X` when `lambda <= 1`, and for `lambda = k + delta > 1`
/// `Y_i = sum_{t<k} U_t X B_i X U_t^* + U_k X C~_i X U_k^*`.
pub fn build_wishart_model(spec: &EnsembleSpec, n: usize, trial: usize) -> RealizedEnsemble {
    let layout = Layout::new(spec.lambda, n);
    let x = sample_gue(n, &mut stream_rng(spec.seed, n, trial, GUE_STREAM));
    let unitaries: Vec<CMatrix> = (0..layout.unitaries())
        .map(|i| sample_haar_unitary(n, &mut stream_rng(spec.seed, n, trial, HAAR_STREAM_BASE + i as u64)))
        .collect();
    let b_tilde = padded(&spec.law, layout.p, n);
    let c_tilde = (layout.k > 0 && layout.delta_p > 0).then(|| padded(&spec.law, layout.delta_p, n));

    // X diag(d) X = X diag(d) X^* since X is self-adjoint.
    let models = if layout.k == 0 {
        b_tilde.iter().map(|d| conjugate_diagonal(&x, d)).collect()
    } else {
        let rotated: Vec<CMatrix> = unitaries.iter().map(|u| mul(u, &x)).collect();
        (0..b_tilde.len())
            .map(|i| {
                let mut y = CMatrix::zeros(n, n);
                for v in &rotated[..layout.k] {
                    y += conjugate_diagonal(v, &b_tilde[i]);
                }
                if let Some(c) = &c_tilde {
                    y += conjugate_diagonal(&rotated[layout.k], &c[i]);
                }
                y
            })
            .collect()
    };
    RealizedEnsemble {
        n,
        layout,
        x,
        b_tilde,
        c_tilde,
        unitaries,
        models,
    }
}

impl RealizedEnsemble {
    /// Normalized trace of a product of the diagonal families:
    /// `tr(B~ word)` for `lambda <= 1`, `k tr(B word) + tr(C~ word)` above.
    pub fn diagonal_trace(&self, letters: &[usize]) -> f64 {
        let tr = |ds: &[Vec<f64>]| -> f64 {
            (0..self.n)
                .map(|j| letters.iter().map(|&v| ds[v][j]).product::<f64>())
                .sum::<f64>()
                / self.n as f64
        };
        let base = tr(&self.b_tilde);
        if self.layout.k == 0 {
            base
        } else {
            self.layout.k as f64 * base + self.c_tilde.as_deref().map_or(0.0, tr)
        }
    }
}

pub(crate) fn trace(m: &CMatrix) -> Complex<f64> {
    m.diagonal().iter().sum::<Complex<f64>>() / m.nrows() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulants::Alphabet;

    fn spec(lambda: f64) -> EnsembleSpec {
        let ab = Alphabet::single_face(["a", "b"]).unwrap();
        let law = JointAtoms::new(ab, vec![vec![1.0, 2.0], vec![0.0, -1.0]], vec![0.5, 0.5]).unwrap();
        EnsembleSpec {
            lambda,
            law,
            sizes: vec![8],
            trials: 1,
            seed: 5,
            max_word_len: 3,
        }
    }

    #[test]
    fn layouts() {
        assert_eq!(Layout::new(1.0, 8).p, 8);
        let half = Layout::new(0.5, 8);
        assert_eq!((half.p, half.k, half.unitaries()), (4, 0, 0));
        let l = Layout::new(2.5, 8);
        assert_eq!((l.k, l.p, l.delta_p, l.unitaries()), (2, 8, 4, 3));
        assert_eq!(Layout::new(3.0, 8).unitaries(), 3);
    }

    #[test]
    fn padding_and_self_adjointness() {
        let e = build_wishart_model(&spec(0.5), 8, 0);
        assert!(e.b_tilde.iter().all(|d| d[4..].iter().all(|&x| x == 0.0)));
        for y in &e.models {
            assert!(super::super::sampling::max_abs(&(y - y.adjoint())) < 1e-12);
        }
        let e = build_wishart_model(&spec(2.5), 8, 0);
        assert_eq!(e.unitaries.len(), 3);
        assert!(e.c_tilde.as_ref().unwrap().iter().all(|d| d[4..].iter().all(|&x| x == 0.0)));
        assert!((e.diagonal_trace(&[0]) - 2.5 * 0.5).abs() < 1e-15);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = build_wishart_model(&spec(2.5), 8, 3);
        let b = build_wishart_model(&spec(2.5), 8, 3);
        assert_eq!(a.models, b.models);
        let c = build_wishart_model(&spec(2.5), 8, 4);
        assert_ne!(a.models, c.models);
    }
}
