use crate::cumulants::{Alphabet, MomentFunctional};
use crate::error::{Error, Result};

/// Largest matrix dimension a diagonal model may reach.
pub const MAX_MODEL_DIM: usize = 1 << 16;

fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidParameter("a law needs at least one atom".into()));
    }
    if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(Error::InvalidParameter("atom weights must be positive".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!("atom weights sum to {total}, not 1")));
    }
    Ok(())
}

/// Index of the atom covering quantile level `(j + 1/2) / p`, for each `j < p`.
fn quantile_indices(weights: &[f64], p: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(p);
    let mut atom = 0;
    let mut upper = weights[0];
    for j in 0..p {
        let u = (j as f64 + 0.5) / p as f64;
        while u > upper && atom + 1 < weights.len() {
            atom += 1;
            upper += weights[atom];
        }
        out.push(atom);
    }
    out
}

/// Finitely supported law of one real variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginal {
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl Marginal {
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if values.len() != weights.len() {
            return Err(Error::Shape("values and weights differ in length".into()));
        }
        check_weights(&weights)?;
        // Quantiles need ascending support.
        let mut pairs: Vec<(f64, f64)> = values.into_iter().zip(weights).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (values, weights) = pairs.into_iter().unzip();
        Ok(Marginal { values, weights })
    }

    /// `Diag(xi_1, .., xi_n)` with `xi_j` the quantile at level `(j - 1/2) / n`.
    pub fn quantile_diagonal(&self, n: usize) -> Vec<f64> {
        quantile_indices(&self.weights, n).into_iter().map(|t| self.values[t]).collect()
    }

    pub fn moment(&self, k: usize) -> f64 {
        self.values.iter().zip(&self.weights).map(|(x, w)| w * x.powi(k as i32)).sum()
    }
}

/// Diagonals of `B(n, 1), .., B(n, N)` placed in `M_n ⊗ .. ⊗ M_n`, the
/// `i`-th acting on tensor slot `i`. Entry `(j_1, .., j_N)` (slot 1 most
/// significant) of diagonal `i` is `xi_{j_i}(i)`.
pub fn build_diagonal_model(marginals: &[Marginal], n: usize) -> Result<Vec<Vec<f64>>> {
    if marginals.is_empty() || n == 0 {
        return Err(Error::InvalidParameter("need at least one marginal and n >= 1".into()));
    }
    let dim = n
        .checked_pow(marginals.len() as u32)
        .filter(|&d| d <= MAX_MODEL_DIM)
        .ok_or_else(|| {
            Error::Budget(format!(
                "{n}^{} exceeds the model dimension cap {MAX_MODEL_DIM}",
                marginals.len()
            ))
        })?;
    let slots = marginals.len();
    Ok(marginals
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let xi = m.quantile_diagonal(n);
            let stride = n.pow((slots - 1 - i) as u32);
            (0..dim).map(|idx| xi[(idx / stride) % n]).collect()
        })
        .collect())
}

/// Law of a commuting family given by joint atoms: atom `t` assigns
/// `values[t][v]` to variable `v` and has probability `weights[t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointAtoms {
    alphabet: Alphabet,
    values: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl JointAtoms {
    pub fn new(alphabet: Alphabet, values: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        if values.len() != weights.len() {
            return Err(Error::Shape("atom list and weight list differ in length".into()));
        }
        if let Some(bad) = values.iter().find(|v| v.len() != alphabet.len()) {
            return Err(Error::Shape(format!(
                "atom has {} coordinates for {} variables",
                bad.len(),
                alphabet.len()
            )));
        }
        if values.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("atom values must be finite".into()));
        }
        check_weights(&weights)?;
        Ok(JointAtoms {
            alphabet,
            values,
            weights,
        })
    }

    /// Equal-weight atoms read off the rows of a diagonal model.
    pub fn from_diagonals(alphabet: Alphabet, diagonals: &[Vec<f64>]) -> Result<Self> {
        let dim = diagonals.first().map_or(0, Vec::len);
        if dim == 0 || diagonals.iter().any(|d| d.len() != dim) {
            return Err(Error::Shape("diagonals must be nonempty and of equal length".into()));
        }
        let values = (0..dim).map(|j| diagonals.iter().map(|d| d[j]).collect()).collect();
        JointAtoms::new(alphabet, values, vec![1.0 / dim as f64; dim])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.values.iter().map(Vec::as_slice).zip(self.weights.iter().copied())
    }

    pub fn moments(&self, cap: usize) -> Result<MomentFunctional> {
        MomentFunctional::from_fn(self.alphabet.clone(), cap, |w| {
            self.atoms()
                .map(|(atom, p)| p * w.letters().iter().map(|&v| atom[v]).product::<f64>())
                .sum()
        })
    }

    /// One diagonal of length `p` per variable, all cut at the same quantile
    /// levels so the family keeps its joint law.
    pub fn quantile_diagonals(&self, p: usize) -> Vec<Vec<f64>> {
        let idx = quantile_indices(&self.weights, p);
        (0..self.alphabet.len())
            .map(|v| idx.iter().map(|&t| self.values[t][v]).collect())
            .collect()
    }
}
