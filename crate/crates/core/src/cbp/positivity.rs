use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::Distribution;
use crate::cumulants::Word;
use crate::error::{Error, Result};

/// Smallest eigenvalue still counted as nonnegative.
pub const PSD_TOLERANCE: f64 = -1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsdReport {
    pub psd: bool,
    pub min_eigenvalue: f64,
    /// Number of basis words (all words of length `<= deg`).
    pub dimension: usize,
    /// Largest `|M[u, v] - M[v, u]|` before symmetrization.
    pub asymmetry: f64,
}

/// Gram matrix `M[u, v] = phi(reverse(u) v)` over every word of length at
/// most `deg`, ordered by length and then lexicographically, and its least
/// eigenvalue.
pub fn psd_check(nu: &Distribution, deg: usize) -> Result<PsdReport> {
    let moments = nu.moments();
    if 2 * deg > moments.degree_cap() {
        return Err(Error::DegreeOverflow {
            len: 2 * deg,
            cap: moments.degree_cap(),
        });
    }
    let basis: Vec<Word> = (0..=deg).flat_map(|len| moments.table().words_of_len(len)).collect();
    let dim = basis.len();
    let gram = DMatrix::from_fn(dim, dim, |i, j| {
        moments.get(&basis[i].reversed().concat(&basis[j])).unwrap()
    });
    let asymmetry = (&gram - gram.transpose()).amax();
    let symmetric = (&gram + gram.transpose()) * 0.5;
    let min_eigenvalue = SymmetricEigen::new(symmetric).eigenvalues.min();
    Ok(PsdReport {
        psd: min_eigenvalue >= PSD_TOLERANCE,
        min_eigenvalue,
        dimension: dim,
        asymmetry,
    })
}
