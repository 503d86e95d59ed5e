//! Unitarily invariant norms, the numerical radius and Schur multiplier
//! norms.

mod gauge;
mod radius;
mod schur;

pub use gauge::{gauge, spectral_norm, uinorm, uinorm_abs_pow, NormSpec};
pub use radius::{default_omega_tol, numerical_radius, numerical_radius_lower_bound, RadiusEstimate};
pub use schur::{
    schur_norm_omega_psd, schur_norm_omega_search, schur_norm_omega_search_detail, SchurSearch,
    SEARCH_OMEGA_TOL,
};
