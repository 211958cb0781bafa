//! Computational engine for compound bi-free Poisson distributions.

pub mod bnc;
pub mod cbp;
pub mod cumulants;
pub mod error;
pub mod fock;
pub mod matrix;
pub mod stats;

pub use error::{Error, Result};
