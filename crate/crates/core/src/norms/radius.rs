//! Numerical radius `ω(A) = max_θ λ_max(Re(e^{iθ} A))`.
//!
//! The profile `h(θ) = λ_max((e^{iθ}A + e^{−iθ}A*)/2)` is the support
//! function of the numerical range `W(A)` in direction `e^{−iθ}`. We sample it
//! on a uniform grid, refine every grid-local maximum by golden-section
//! search, and then certify the result: every sampled direction gives a
//! supporting line of `W(A)`, so the circumscribed polygon bounds `ω(A)` from
//! above, while the eigenvector `x` at each direction gives a point
//! `x*Ax ∈ W(A)` that bounds it from below. Cells of the polygon are bisected
//! until the two bounds are within the requested tolerance.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gauge::spectral_norm;
use crate::error::Result;
use crate::linalg::{herm_eig_default, Matrix};
use crate::random::{rng_from_seed, unit_vector};

const INITIAL_GRID: usize = 36;
const GOLDEN_BRACKET_TOL: f64 = 1e-7;
/// Cap on profile evaluations; a disk-shaped range at relative tolerance
/// 1e−8 needs about 2·10⁴.
const MAX_SAMPLES: usize = 60_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    /// Largest `|x*Ax|` found; a point of the numerical range, so `≤ ω(A)`.
    pub value: f64,
    /// Circumscribed-polygon bound, `≥ ω(A)`.
    pub upper_bound: f64,
    /// Rotation `θ ∈ [0, 2π)` at which `Re(e^{iθ}x*Ax)` attains `value`.
    pub theta_star: f64,
    /// Number of directions at which the profile was evaluated.
    pub grid_points: usize,
    pub refinement_tol: f64,
}

impl RadiusEstimate {
    pub fn gap(&self) -> f64 {
        self.upper_bound - self.value
    }
}

/// Default absolute tolerance `1e−8 · max(1, ‖A‖₂)`.
pub fn default_omega_tol(a: &Matrix) -> f64 {
    1e-8 * spectral_norm(a).max(1.0)
}

#[derive(Debug, Clone, Copy)]
struct Support {
    theta: f64,
    /// `h(θ)`.
    level: f64,
    /// Boundary point `x*Ax` for the top eigenvector at `θ`.
    point: Complex64,
}

struct Profile<'a> {
    a: &'a Matrix,
    adj: Matrix,
    samples: Vec<Support>,
}

impl<'a> Profile<'a> {
    fn new(a: &'a Matrix) -> Self {
        Self { a, adj: a.adjoint(), samples: Vec::new() }
    }

    fn eval(&mut self, theta: f64) -> Result<f64> {
        let theta = theta.rem_euclid(TAU);
        let rot = Complex64::from_polar(1.0, theta);
        let h = &self.a.scale(rot * 0.5) + &self.adj.scale(rot.conj() * 0.5);
        let eig = herm_eig_default(&h)?;
        let x = eig.vector(0);
        let point = self.a.quadratic_form(&x);
        let level = eig.max();
        self.samples.push(Support { theta, level, point });
        Ok(level)
    }

    fn best_point(&self) -> &Support {
        self.samples
            .iter()
            .max_by(|a, b| a.point.norm().total_cmp(&b.point.norm()))
            .expect("profile sampled")
    }
}

/// Numerical radius with absolute error at most `tol` (up to the accuracy of
/// the Hermitian eigensolver).
pub fn numerical_radius(a: &Matrix, tol: f64) -> Result<RadiusEstimate> {
    assert!(tol > 0.0, "numerical radius tolerance must be positive");
    let mut profile = Profile::new(a);
    if a.max_abs() == 0.0 {
        return Ok(RadiusEstimate {
            value: 0.0,
            upper_bound: 0.0,
            theta_star: 0.0,
            grid_points: 0,
            refinement_tol: tol,
        });
    }

    let step = TAU / INITIAL_GRID as f64;
    let grid: Vec<f64> = (0..INITIAL_GRID)
        .map(|k| profile.eval(k as f64 * step))
        .collect::<Result<_>>()?;

    for k in 0..INITIAL_GRID {
        let prev = grid[(k + INITIAL_GRID - 1) % INITIAL_GRID];
        let next = grid[(k + 1) % INITIAL_GRID];
        if grid[k] >= prev && grid[k] >= next {
            let centre = k as f64 * step;
            golden_max(&mut profile, centre - step, centre + step)?;
        }
    }

    loop {
        profile.samples.sort_by(|x, y| x.theta.total_cmp(&y.theta));
        profile.samples.dedup_by(|x, y| (x.theta - y.theta).abs() < 1e-15);
        let lower = profile.best_point().point.norm();
        let cells = open_cells(&profile.samples, lower + tol);
        if cells.is_empty() || profile.samples.len() >= MAX_SAMPLES {
            let best = *profile.best_point();
            let upper = worst_vertex(&profile.samples).max(lower);
            return Ok(RadiusEstimate {
                value: lower,
                upper_bound: upper,
                theta_star: (-best.point.arg()).rem_euclid(TAU),
                grid_points: profile.samples.len(),
                refinement_tol: tol,
            });
        }
        for mid in cells {
            profile.eval(mid)?;
        }
    }
}

/// Maximizes the profile on `[lo, hi]` by golden-section search. Every
/// evaluation is recorded as a supporting line.
fn golden_max(profile: &mut Profile<'_>, mut lo: f64, mut hi: f64) -> Result<()> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = profile.eval(x1)?;
    let mut f2 = profile.eval(x2)?;
    while hi - lo > GOLDEN_BRACKET_TOL {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = profile.eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = profile.eval(x2)?;
        }
    }
    Ok(())
}

/// Largest modulus over the vertices of the circumscribed polygon. Samples
/// must be sorted by angle.
fn worst_vertex(samples: &[Support]) -> f64 {
    (0..samples.len()).map(|k| cell_vertex(samples, k).1).fold(f64::NEG_INFINITY, f64::max)
}

/// Midpoint angles of the cells whose polygon vertex lies beyond `bound`.
fn open_cells(samples: &[Support], bound: f64) -> Vec<f64> {
    (0..samples.len())
        .map(|k| cell_vertex(samples, k))
        .filter(|&(_, modulus)| modulus > bound)
        .map(|(mid, _)| mid)
        .collect()
}

/// Midpoint angle and vertex modulus of the cell starting at sample `k`.
fn cell_vertex(samples: &[Support], k: usize) -> (f64, f64) {
    let a = &samples[k];
    let b = &samples[(k + 1) % samples.len()];
    let mut delta = b.theta - a.theta;
    if k + 1 == samples.len() {
        delta += TAU;
    }
    let modulus = if delta >= PI { f64::INFINITY } else { vertex_modulus(a.level, delta, b.level) };
    (a.theta + 0.5 * delta, modulus)
}

/// Modulus of the intersection of the lines `Re(e^{iθ}z) = p1` and
/// `Re(e^{i(θ+Δ)}z) = p2`. Writing `z = e^{−iθ}(p1 + iy)` gives
/// `y = (p1 cos Δ − p2) / sin Δ`.
fn vertex_modulus(p1: f64, delta: f64, p2: f64) -> f64 {
    let y = (p1 * delta.cos() - p2) / delta.sin();
    p1.hypot(y)
}

/// Largest `|x*Ax|` over `trials` random unit vectors; a lower bound on
/// `ω(A)`, reproducible from `seed`.
pub fn numerical_radius_lower_bound(a: &Matrix, trials: usize, seed: u64) -> f64 {
    assert!(trials >= 1, "at least one trial required");
    let mut rng = rng_from_seed(seed);
    (0..trials)
        .map(|_| a.quadratic_form(&unit_vector(&mut rng, a.n())).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_matrices() {
        let r = numerical_radius(&Matrix::identity(3), 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = numerical_radius(&Matrix::diag_real(&[3.0, -5.0]).unwrap(), 1e-10).unwrap();
        assert!((r.value - 5.0).abs() < 1e-10);
        assert!(r.upper_bound >= r.value && r.gap() <= 1e-10);
    }

    #[test]
    fn nilpotent_jordan_block() {
        // Oracle: for unit x, |x̄₁x₂| = |x₁||x₂| ≤ 1/2 with equality at
        // |x₁| = |x₂|; dense sampling of the quarter circle.
        let oracle = (0..=100_000)
            .map(|k| {
                let phi = k as f64 / 100_000.0 * std::f64::consts::FRAC_PI_2;
                phi.cos() * phi.sin()
            })
            .fold(0.0, f64::max);
        let a = Matrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let r = numerical_radius(&a, 1e-9).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9);
        assert!((r.value - oracle).abs() < 1e-9);
    }

    #[test]
    fn zero_matrix() {
        let r = numerical_radius(&Matrix::zeros(2), 1e-8).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(numerical_radius_lower_bound(&Matrix::zeros(2), 10, 1), 0.0);
    }

    #[test]
    fn lower_bound_examples() {
        assert!((numerical_radius_lower_bound(&Matrix::identity(3), 5, 9) - 1.0).abs() < 1e-14);
        let a = Matrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let lb = numerical_radius_lower_bound(&a, 100_000, 3);
        assert!(lb >= 0.49 && lb <= 0.5 + 1e-12);
        assert_eq!(lb, numerical_radius_lower_bound(&a, 100_000, 3));
    }

    #[test]
    fn theta_star_rotates_onto_real_axis() {
        let mut a = Matrix::zeros(2);
        a[(0, 0)] = Complex64::new(0.0, 2.0);
        a[(1, 1)] = Complex64::new(1.0, 0.0);
        let r = numerical_radius(&a, 1e-10).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10);
        // e^{iθ}·2i must be real positive: θ = 3π/2.
        assert!((r.theta_star - 1.5 * PI).abs() < 1e-6);
    }
}
