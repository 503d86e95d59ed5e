//! Seeded random instances, normalized to unit spectral norm.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::norms::spectral_norm;
use crate::random::{ginibre, rng_from_seed};

pub const DEFAULT_PD_FLOOR: f64 = 0.05;

/// `G G* / ‖G G*‖₂` for a Ginibre `G`.
pub fn gen_psd(n: usize, seed: u64) -> Matrix {
    psd_from_factor(&ginibre(&mut rng_from_seed(seed), n))
}

/// [`gen_psd`] shifted by `floor · I` and renormalized, so the smallest
/// eigenvalue is at least `floor / (1 + floor)`.
pub fn gen_pd(n: usize, seed: u64, floor: f64) -> Matrix {
    pd_from_factor(&ginibre(&mut rng_from_seed(seed), n), floor)
}

/// Ginibre matrix scaled to unit spectral norm.
pub fn gen_general(n: usize, seed: u64) -> Matrix {
    general_from_factor(&ginibre(&mut rng_from_seed(seed), n))
}

pub(crate) fn psd_from_factor(g: &Matrix) -> Matrix {
    unit_norm(&(g * &g.adjoint())).hermitian_part()
}

pub(crate) fn pd_from_factor(g: &Matrix, floor: f64) -> Matrix {
    let shifted = &psd_from_factor(g) + &Matrix::identity(g.n()).scale_real(floor);
    shifted.scale_real(1.0 / (1.0 + floor))
}

pub(crate) fn general_from_factor(g: &Matrix) -> Matrix {
    unit_norm(g)
}

fn unit_norm(m: &Matrix) -> Matrix {
    let s = spectral_norm(m);
    if s > 0.0 {
        m.scale_real(1.0 / s)
    } else {
        m.clone()
    }
}

/// Unnormalized random draws behind one trial instance. Every trial draws
/// the same sequence (three Ginibre factors, then `n` Gaussians), so the
/// instance depends only on the stream and `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factors {
    pub a: Matrix,
    pub b: Matrix,
    pub x: Matrix,
    /// Logarithms of the sample points for Kwong matrices.
    pub log_points: Vec<f64>,
}

impl Factors {
    pub fn draw<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let a = ginibre(rng, n);
        let b = ginibre(rng, n);
        let x = ginibre(rng, n);
        let log_points = (0..n).map(|_| 1.5 * rng.sample::<f64, _>(StandardNormal)).collect();
        Self { a, b, x, log_points }
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    /// Adds `sigma` times fresh Gaussian noise to every factor.
    pub fn perturb<R: Rng + ?Sized>(&self, rng: &mut R, sigma: f64) -> Self {
        let noise = Self::draw(rng, self.n());
        let bump = |m: &Matrix, d: &Matrix| m + &d.scale_real(sigma);
        Self {
            a: bump(&self.a, &noise.a),
            b: bump(&self.b, &noise.b),
            x: bump(&self.x, &noise.x),
            log_points: self.log_points.iter().zip(&noise.log_points).map(|(p, d)| p + sigma * d).collect(),
        }
    }
}
