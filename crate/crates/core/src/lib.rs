//! Recognition of permutation lattices for cyclic `p`-groups over complete
//! discrete valuation rings with finite residue field `F_p`.

pub mod commands;
pub mod error;
pub mod fp;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod recognition;
pub mod ring;
pub mod samples;
pub mod snf;
pub mod suite;

pub use error::{Error, Result};
pub use lattice::{CyclicGroup, H1Report, Lattice, MultVector};
pub use matrix::MatrixR;
pub use ring::{make_ring, Ring, RingElem};
