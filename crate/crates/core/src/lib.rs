//! Exact combinatorics of the simplicial category, finite simplicial sets in
//! Eilenberg–Zilber normal form, polyhedral neighborhoods in standard
//! simplices, and separation certificates for points of thin geometric
//! realizations.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the `simpsep` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod admissible;
pub mod bitset;
pub mod checks;
pub mod delta;
pub mod error;
pub mod gamma;
pub mod geom;
pub mod ratlp;
pub mod rational;
pub mod realization;
pub mod sampling;
pub mod separation;
pub mod sset;

pub use admissible::{AdmissibleFamily, FamilyKind, UTables};
pub use delta::{DeltaMor, MorphismKind};
pub use error::Error;
pub use gamma::{GammaMor, PosetCache};
pub use geom::{BaryPoint, IntervalFamily};
pub use ratlp::{FeasibilityResult, LinSystem, Relation, Row, Status};
pub use rational::Q;
pub use sset::{CellId, FiniteSSet, Simplex};

pub type Result<T, E = Error> = core::result::Result<T, E>;
