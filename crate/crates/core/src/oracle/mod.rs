//! Independent reference implementations at desk scale, used to cross-check
//! the main pipeline. Each takes a different algorithmic route on purpose and
//! refuses inputs beyond its documented size caps.

pub mod brute;
pub mod cochain;
mod elim;
pub mod extension;
pub mod search;

pub use brute::{brute_multiplicities, character_fixed_rank, orbit_vectors};
pub use cochain::{cochain_h1, log_p_order, FiniteModule};
pub use extension::{extension_with, sample_extension};
pub use search::exhaustive_basis_search;
