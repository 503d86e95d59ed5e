//! Matrix Cauchy–Schwarz refinements, checked numerically.

pub mod error;
pub mod harness;
pub mod inequalities;
pub mod linalg;
pub mod norms;
pub mod quadrature;
pub mod random;

pub use error::{Error, Result};
