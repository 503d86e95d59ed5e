//! Dense complex kernel for small square matrices.

mod eig;
mod func;
mod matrix;
mod svd;

pub use eig::{herm_eig, herm_eig_default, HermEig, DEFAULT_SYMMETRY_TOL};
pub use func::{matrix_fn, psd_power, PsdMatrix, ScalarFn, PD_TOL, PSD_TOL};
pub use matrix::Matrix;
pub use svd::{singular_values, singular_values_gram, SingularSpectrum};

pub use num_complex::Complex64;
