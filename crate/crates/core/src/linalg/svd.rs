//! Singular values.
//!
//! The primary route is one-sided (Hestenes) Jacobi applied to the columns
//! of `M`, which keeps small singular values accurate to working precision
//! relative to themselves. [`singular_values_gram`] is the textbook route
//! through the eigenvalues of `M*M`; it loses accuracy for singular values
//! below roughly `√ε · σ_max` and is kept as an independent cross-check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eig::herm_eig_default;
use super::matrix::Matrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Singular values in nonincreasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    /// Sorts the input descending; rejects negative or non-finite entries.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some(&v) = values.iter().find(|&&v| v < 0.0) {
            return Err(Error::InvalidParams(format!("negative singular value {v}")));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Spectrum of `|M|^r`, using `0^0 = 1`.
    pub fn powf(&self, r: f64) -> Self {
        let values = self.values.iter().map(|&s| if r == 0.0 { 1.0 } else { s.powf(r) }).collect();
        Self { values }
    }
}

/// Singular values by one-sided Jacobi on the columns of `m`.
pub fn singular_values(m: &Matrix) -> Result<SingularSpectrum> {
    let n = m.n();
    // Column-major working copy: cols[j] is column j.
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| m[(i, j)]).collect()).collect();
    // Columns below this squared norm are rounding noise in the null space.
    let negligible = (1e-3 * f64::EPSILON * m.frobenius()).powi(2);
    // Rounding keeps |γ|/√(αβ) near ε after convergence, so a threshold of
    // exactly ε can stall.
    let orthogonal = f64::EPSILON * (n as f64).max(4.0);

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                rotated |= orthogonalize(&mut cols, p, q, negligible, orthogonal);
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
    }

    let values = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    SingularSpectrum::new(values)
}

/// Rotates columns p and q so they become orthogonal. Returns false when they
/// already are (to working precision).
fn orthogonalize(cols: &mut [Vec<Complex64>], p: usize, q: usize, negligible: f64, orthogonal: f64) -> bool {
    let (alpha, beta, gamma) = {
        let (cp, cq) = (&cols[p], &cols[q]);
        let alpha: f64 = cp.iter().map(|z| z.norm_sqr()).sum();
        let beta: f64 = cq.iter().map(|z| z.norm_sqr()).sum();
        let gamma: Complex64 = cp.iter().zip(cq).map(|(a, b)| a.conj() * b).sum();
        (alpha, beta, gamma)
    };
    let g = gamma.norm();
    if g == 0.0 || alpha.min(beta) <= negligible || g <= orthogonal * (alpha * beta).sqrt() {
        return false;
    }
    // Jacobi rotation diagonalizing the Gram block [[α, γ], [γ̄, β]].
    let phase_conj = (gamma / g).conj();
    let zeta = (beta - alpha) / (2.0 * g);
    let t = if zeta.abs() > 1e150 {
        0.5 / zeta
    } else {
        let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
        sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let u_qp = phase_conj * -s;
    let u_qq = phase_conj * c;

    let n = cols[p].len();
    for k in 0..n {
        let a = cols[p][k];
        let b = cols[q][k];
        cols[p][k] = a * c + b * u_qp;
        cols[q][k] = a * s + b * u_qq;
    }
    true
}

/// Singular values as `√max(λ, 0)` over the eigenvalues of `M*M`.
pub fn singular_values_gram(m: &Matrix) -> Result<SingularSpectrum> {
    let gram = &m.adjoint() * m;
    let eig = herm_eig_default(&gram)?;
    SingularSpectrum::new(eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_nilpotent() {
        let s = singular_values(&Matrix::diag_real(&[3.0, -4.0]).unwrap()).unwrap();
        assert_eq!(s.values(), &[4.0, 3.0]);

        let s = singular_values(&Matrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()).unwrap();
        assert_eq!(s.values(), &[1.0, 0.0]);
    }

    #[test]
    fn all_ones_matches_gram_oracle() {
        // M*M = [[2,2],[2,2]] has eigenvalues 4 and 0.
        let m = Matrix::from_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        let s = singular_values(&m).unwrap();
        assert!((s.values()[0] - 2.0).abs() < 1e-15);
        assert!(s.values()[1].abs() < 1e-15);
        let g = singular_values_gram(&m).unwrap();
        assert!((g.values()[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn small_singular_values_keep_relative_accuracy() {
        let m = Matrix::diag_real(&[1.0, 1e-9]).unwrap();
        let u = {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            Matrix::from_rows(&[&[h, h], &[h, -h]]).unwrap()
        };
        let rotated = &(&u * &m) * &u;
        let s = singular_values(&rotated).unwrap();
        assert!((s.values()[1] / 1e-9 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn powf_uses_zero_to_zero_is_one() {
        let s = SingularSpectrum::new(vec![2.0, 0.0]).unwrap();
        assert_eq!(s.powf(0.0).values(), &[1.0, 1.0]);
        assert_eq!(s.powf(3.0).values(), &[8.0, 0.0]);
    }
}
