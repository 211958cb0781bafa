//! Moment functionals and bi-free cumulants on words over a finite
//! two-faced alphabet, and the Möbius transforms between them.

mod json;
mod table;
mod transform;

pub use json::{AlphabetJson, EntryJson, TableJson, TABLE_SCHEMA_VERSION};
pub use table::{Alphabet, CumulantTable, MomentFunctional, Word, WordTable, MAX_TABLE_ENTRIES};
pub use transform::{kappa_chi_pi, kappa_from_moments, moments_from_kappa, phi_pi, reorder_by_s_chi};
