//! Exact computations for the graded algebra whose relations come from octonion
//! multiplication: normal forms, Hilbert series, Koszul duality, derivations,
//! representations and quiver moduli.

pub mod error;
pub mod fano_octonion;
pub mod field;
pub mod koszul;
pub mod linalg;
pub mod ncpoly;
pub mod parse;
pub mod quiver;
pub mod report;
pub mod reps;
pub mod rewrite;
pub mod series;
pub mod structure;
pub mod suites;
pub mod tables;

pub use error::{Error, Result};
