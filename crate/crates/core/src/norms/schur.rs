//! Schur multiplier norms induced by the numerical radius,
//! `‖S_A‖_ω = sup_{X≠0} ω(A∘X) / ω(X)`.

use serde::{Deserialize, Serialize};

use super::radius::numerical_radius;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PsdMatrix, PSD_TOL};
use crate::random::{ginibre, rng_from_seed};

/// Absolute tolerance for the ω evaluations inside the ratio search.
pub const SEARCH_OMEGA_TOL: f64 = 1e-10;

/// Closed form for positive semidefinite `A`: the largest diagonal entry.
pub fn schur_norm_omega_psd(a: &Matrix) -> Result<f64> {
    let psd = PsdMatrix::new(a)?;
    let scale = psd.eig().spectral_scale().max(f64::MIN_POSITIVE);
    let diag = a.diagonal();
    if let Some(z) = diag.iter().find(|z| z.im.abs() > PSD_TOL * scale) {
        return Err(Error::NotPsd { min_eigenvalue: -z.im.abs() });
    }
    Ok(diag.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchurSearch {
    /// Best ratio overall; a lower bound on `‖S_A‖_ω`.
    pub value: f64,
    /// Best ratio over the candidates `X = e_i e_i^T`.
    pub diagonal_candidate: f64,
    /// Best ratio over random Ginibre `X`.
    pub random_candidate: f64,
    pub samples: usize,
}

/// Lower bound on `‖S_A‖_ω` from the deterministic candidates `e_i e_i^T` and
/// `trials` random matrices; reproducible from `seed`.
pub fn schur_norm_omega_search(a: &Matrix, trials: usize, seed: u64) -> Result<f64> {
    Ok(schur_norm_omega_search_detail(a, trials, seed)?.value)
}

pub fn schur_norm_omega_search_detail(a: &Matrix, trials: usize, seed: u64) -> Result<SchurSearch> {
    assert!(trials >= 1, "at least one trial required");
    let n = a.n();
    let mut diagonal_candidate = 0.0_f64;
    for i in 0..n {
        let x = Matrix::unit_projector(n, i);
        diagonal_candidate = diagonal_candidate.max(ratio(a, &x)?.unwrap_or(0.0));
    }
    let mut rng = rng_from_seed(seed);
    let mut random_candidate = 0.0_f64;
    let mut samples = n;
    for _ in 0..trials {
        let x = ginibre(&mut rng, n);
        if let Some(r) = ratio(a, &x)? {
            random_candidate = random_candidate.max(r);
            samples += 1;
        }
    }
    Ok(SchurSearch {
        value: diagonal_candidate.max(random_candidate),
        diagonal_candidate,
        random_candidate,
        samples,
    })
}

/// `ω(A∘X) / ω(X)`, or `None` when `ω(X) = 0`.
fn ratio(a: &Matrix, x: &Matrix) -> Result<Option<f64>> {
    let denom = numerical_radius(x, SEARCH_OMEGA_TOL)?.value;
    if denom == 0.0 {
        return Ok(None);
    }
    let num = numerical_radius(&a.hadamard(x)?, SEARCH_OMEGA_TOL)?.value;
    Ok(Some(num / denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(schur_norm_omega_psd(&Matrix::identity(3)).unwrap(), 1.0);
        assert_eq!(schur_norm_omega_psd(&Matrix::diag_real(&[2.0, 7.0, 3.0]).unwrap()).unwrap(), 7.0);
        let a = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        assert_eq!(schur_norm_omega_psd(&a).unwrap(), 2.0);
        let indefinite = Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
        assert!(matches!(schur_norm_omega_psd(&indefinite), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn search_matches_closed_form() {
        let a = Matrix::diag_real(&[2.0, 7.0, 3.0]).unwrap();
        let s = schur_norm_omega_search_detail(&a, 50, 11).unwrap();
        assert!((s.value - 7.0).abs() < 1e-8);
        assert!((s.diagonal_candidate - 7.0).abs() < 1e-9);

        assert!((schur_norm_omega_search(&Matrix::ones(3), 50, 2).unwrap() - 1.0).abs() < 1e-8);
        assert!((schur_norm_omega_search(&Matrix::identity(3), 50, 2).unwrap() - 1.0).abs() < 1e-8);
    }
}
