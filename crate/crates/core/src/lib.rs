//! Exact intersection theory on flag-bundle towers, integral lattice
//! arithmetic, degree-4 calculus on hyperkähler fourfolds and alternating
//! 3-forms in ten variables.

pub mod algebra;
pub mod chern;
pub mod error;
pub mod fixtures;
pub mod hk;
pub mod lattice;
pub mod properties;
pub mod towers;
pub mod trivector;
pub mod variety;

pub use error::{Error, Result};
