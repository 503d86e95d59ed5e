//! Inequality chains evaluated on concrete instances.
//!
//! Every check returns an [`InequalityVerdict`] whose links are ordered from
//! the side claimed smallest to the side claimed largest.

mod heinz;
mod kwong;
mod shape;
mod verdict;

use serde::{Deserialize, Serialize};

pub use heinz::{check_bhatia_davis, unit_grid, HeinzCurve, HeinzInstance, TwoParamSurface, HH_LIMIT_WIDTH};
pub use kwong::{
    check_cor44, check_example45, check_kwong_psd, check_thm43, distinct_points, is_kwong_sample, kwong_matrix, KWONG_TOL,
};
pub use shape::{
    check_convexity_f, check_convexity_g, check_jensen_phi, check_hermite_hadamard, check_thm32, check_thm33, jensen_phi,
    jensen_phi_fn, thm32_printed_form_holds, CONVEXITY_F_GRID, CONVEXITY_G_GRID, JENSEN_GRID,
};
pub use verdict::{Fingerprinter, InequalityVerdict, Link, VerdictBuilder};

/// Tolerances shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Relative slack tolerance.
    pub tol_rel: f64,
    /// Accuracy of one-dimensional integrals, in units of
    /// `max(1, largest integrand value)`.
    pub quad_tol: f64,
    /// Same for two-dimensional integrals.
    pub quad_tol_2d: f64,
    /// Accuracy of each numerical radius, in units of `max(1, ‖·‖₂)`.
    pub omega_tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { tol_rel: 1e-8, quad_tol: 1e-9, quad_tol_2d: 1e-8, omega_tol: 1e-8 }
    }
}
