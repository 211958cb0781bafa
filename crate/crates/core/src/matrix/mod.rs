//! Random matrix models for compound free and bi-free Poisson laws.
//!
//! A commuting family given by joint atoms is discretized into diagonal
//! matrices, compressed by a GUE matrix (`X B X`) and, for rates above one,
//! summed over independent Haar rotations. Left variables act on the matrix
//! bimodule by left multiplication and right variables by right
//! multiplication; trial-averaged normalized traces of such words are
//! inverted to bi-free cumulants.

mod diagonal;
mod ensemble;
mod estimate;
mod rng;
mod sampling;
mod words;

pub use diagonal::{build_diagonal_model, JointAtoms, Marginal, MAX_MODEL_DIM};
pub use ensemble::{build_wishart_model, EnsembleSpec, Layout, RealizedEnsemble};
pub use estimate::{estimate_empirical_cumulants, CumulantRow, EnsembleReport, SizeReport};
pub use rng::{stream_rng, GUE_STREAM, HAAR_STREAM_BASE, WORD_STREAM};
pub use sampling::{max_abs, sample_gue, sample_haar_unitary, CMatrix};
pub use words::{apply_sequentially, commutation_check, evaluate_bimatrix_word, random_words, BiMatrixWord, WordEvaluator};
