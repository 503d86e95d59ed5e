//! Parameter-dependent norm products and the chains built from them.
//!
//! For PSD `A = U diag(a) U*` and `B = W diag(b) W*`, the singular values of
//! `A^s X B^t` equal those of `diag(a^s) (U* X W) diag(b^t)`, so every norm
//! term reduces to a diagonal rescaling of one fixed matrix followed by an
//! SVD. [`HeinzInstance::direct_term`] evaluates the same quantity through
//! explicit matrix powers and products and serves as the cross-check.

use serde::{Deserialize, Serialize};

use super::verdict::{Fingerprinter, InequalityVerdict, VerdictBuilder};
use super::CheckOptions;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, Matrix, PsdMatrix};
use crate::norms::{gauge, uinorm_abs_pow, NormSpec};
use crate::quadrature::{try_integrate_1d, try_integrate_2d};

/// Below this `|1 − 2μ|` the Hermite–Hadamard chain switches to its limit.
pub const HH_LIMIT_WIDTH: f64 = 1e-6;

/// `(A, B, X, r, |||·|||)` with the spectral data needed to evaluate
/// `||| |A^s X B^t|^r |||` for many exponents.
#[derive(Debug, Clone)]
pub struct HeinzInstance {
    a: PsdMatrix,
    b: PsdMatrix,
    x: Matrix,
    /// `U* X W` in the eigenbases of A and B.
    core: Matrix,
    r: f64,
    spec: NormSpec,
    fingerprint: Fingerprinter,
}

/// Samples of `f(t) = ||| |A^t X B^{1−t}|^r ||| · ||| |A^{1−t} X B^t|^r |||`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeinzCurve {
    pub r: f64,
    pub spec: NormSpec,
    pub samples: Vec<(f64, f64)>,
}

/// `G(s, t) = ||| |A^t X B^{1−s}|^r ||| · ||| |A^{1−t} X B^s|^r |||` on a
/// uniform grid of `[0, 1]²`; `values[i][j] = G(nodes[i], nodes[j])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoParamSurface {
    pub nodes: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl TwoParamSurface {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }
}

impl HeinzInstance {
    pub fn new(a: &Matrix, b: &Matrix, x: &Matrix, r: f64, spec: NormSpec) -> Result<Self> {
        let n = x.n();
        for m in [a, b] {
            if m.n() != n {
                return Err(Error::DimensionMismatch { left: m.n(), right: n });
            }
        }
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::InvalidParams(format!("exponent r must be finite and >= 0, got {r}")));
        }
        spec.validate(n)?;
        let a_psd = PsdMatrix::new(a)?;
        let b_psd = PsdMatrix::new(b)?;
        let core = &(&a_psd.eig().eigenvectors.adjoint() * x) * &b_psd.eig().eigenvectors;
        let fingerprint = Fingerprinter::new()
            .matrix(a)
            .matrix(b)
            .matrix(x)
            .number(r)
            .text(&spec.to_string());
        Ok(Self { a: a_psd, b: b_psd, x: x.clone(), core, r, spec, fingerprint })
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn spec(&self) -> NormSpec {
        self.spec
    }

    pub fn a(&self) -> &Matrix {
        self.a.matrix()
    }

    pub fn b(&self) -> &Matrix {
        self.b.matrix()
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    /// Same instance with `X` replaced.
    pub fn with_x(&self, x: &Matrix) -> Result<Self> {
        Self::new(self.a.matrix(), self.b.matrix(), x, self.r, self.spec)
    }

    /// `||| |A^s X B^t|^r |||` for `s, t ≥ 0`.
    pub fn term(&self, s: f64, t: f64) -> Result<f64> {
        check_exponent(s)?;
        check_exponent(t)?;
        let left = self.a.power_spectrum(s)?;
        let right = self.b.power_spectrum(t)?;
        let m = self.core.scale_rows_cols(&left, &right);
        gauge(&singular_values(&m)?.powf(self.r), self.spec)
    }

    /// [`Self::term`] through explicit matrix powers and products.
    pub fn direct_term(&self, s: f64, t: f64) -> Result<f64> {
        let m = &(&self.a.power(s)? * &self.x) * &self.b.power(t)?;
        uinorm_abs_pow(&m, self.r, self.spec)
    }

    /// `f(t) = ||| |A^t X B^{1−t}|^r ||| · ||| |A^{1−t} X B^t|^r |||`.
    pub fn heinz_f(&self, t: f64) -> Result<f64> {
        check_unit(t, "t")?;
        Ok(self.term(t, 1.0 - t)? * self.term(1.0 - t, t)?)
    }

    /// `G(s, t) = ||| |A^t X B^{1−s}|^r ||| · ||| |A^{1−t} X B^s|^r |||`.
    pub fn surface_value(&self, s: f64, t: f64) -> Result<f64> {
        check_unit(s, "s")?;
        check_unit(t, "t")?;
        Ok(self.term(t, 1.0 - s)? * self.term(1.0 - t, s)?)
    }

    /// `H(x, y) = ||| |A^x X B^{1−y}|^r ||| · ||| |A^{1−x} X B^y|^r |||`, the
    /// integrand of the two-dimensional chain (A-exponent first).
    fn dragomir_h(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.term(x, 1.0 - y)? * self.term(1.0 - x, y)?)
    }

    /// `||| |AX|^r ||| · ||| |XB|^r |||`.
    pub fn corner_ax_xb(&self) -> Result<f64> {
        Ok(self.term(1.0, 0.0)? * self.term(0.0, 1.0)?)
    }

    /// `||| |AXB|^r ||| · ||| |X|^r |||`.
    pub fn corner_axb_x(&self) -> Result<f64> {
        Ok(self.term(1.0, 1.0)? * self.term(0.0, 0.0)?)
    }

    pub fn curve(&self, points: usize) -> Result<HeinzCurve> {
        let nodes = unit_grid(points)?;
        let samples = nodes.iter().map(|&t| Ok((t, self.heinz_f(t)?))).collect::<Result<_>>()?;
        Ok(HeinzCurve { r: self.r, spec: self.spec, samples })
    }

    /// `G` on a `grid_n × grid_n` grid; `grid_n` must be odd and at least 3
    /// so that `(1/2, 1/2)` is a node.
    pub fn surface(&self, grid_n: usize) -> Result<TwoParamSurface> {
        if grid_n < 3 || grid_n % 2 == 0 {
            return Err(Error::InvalidParams(format!("surface grid must be odd and >= 3, got {grid_n}")));
        }
        let nodes = unit_grid(grid_n)?;
        let values = nodes
            .iter()
            .map(|&s| nodes.iter().map(|&t| self.surface_value(s, t)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(TwoParamSurface { nodes, values })
    }

    pub(crate) fn fingerprint(&self, suite: &str, params: &[f64]) -> String {
        params.iter().fold(self.fingerprint.clone().text(suite), |fp, &p| fp.number(p)).finish()
    }

    /// `f(1/2) ≤ f(μ) ≤ f(0)`.
    pub fn check_cs_basic(&self, mu: f64, opts: &CheckOptions) -> Result<InequalityVerdict> {
        check_unit(mu, "mu")?;
        Ok(VerdictBuilder::new("cs-basic", opts.tol_rel)
            .link("f(1/2)", self.heinz_f(0.5)?)
            .link("f(mu)", self.heinz_f(mu)?)
            .link("f(0)", self.heinz_f(0.0)?)
            .fingerprint(self.fingerprint("cs-basic", &[mu]))
            .build())
    }

    /// Hermite–Hadamard refinement of the Heinz chain:
    /// `f(1/2) ≤ mean_{[μ,1−μ]} f ≤ (f(1/2) + f(μ))/2 ≤ f(μ)`.
    pub fn check_hh_chain(&self, mu: f64, opts: &CheckOptions) -> Result<InequalityVerdict> {
        check_unit(mu, "mu")?;
        let half = self.heinz_f(0.5)?;
        let f_mu = self.heinz_f(mu)?;
        let width = (1.0 - 2.0 * mu).abs();
        let builder = VerdictBuilder::new("hh-chain", opts.tol_rel)
            .fingerprint(self.fingerprint("hh-chain", &[mu]));
        if width < HH_LIMIT_WIDTH {
            return Ok(builder
                .link("f(1/2)", half)
                .link("limit mean", half)
                .link("(f(1/2)+f(mu))/2", half)
                .link("f(mu)", half)
                .build());
        }
        let (lo, hi) = (mu.min(1.0 - mu), mu.max(1.0 - mu));
        // f is convex with its maximum at the endpoints.
        let quad_tol = opts.quad_tol * f_mu.max(1.0);
        let q = try_integrate_1d(|s| self.heinz_f(s), lo, hi, quad_tol)?;
        Ok(builder
            .link("f(1/2)", half)
            .link("mean f", q.value / width)
            .link("(f(1/2)+f(mu))/2", 0.5 * (half + f_mu))
            .link("f(mu)", f_mu)
            .allow_abs(quad_tol.max(q.error_estimate) / width)
            .build())
    }

    /// `G(1/2, 1/2) ≤ G(s, t) ≤ max(corner products)`.
    pub fn check_corner_max(&self, s: f64, t: f64, opts: &CheckOptions) -> Result<InequalityVerdict> {
        let corners = self.corner_ax_xb()?.max(self.corner_axb_x()?);
        Ok(VerdictBuilder::new("corner-max", opts.tol_rel)
            .link("G(1/2,1/2)", self.surface_value(0.5, 0.5)?)
            .link("G(s,t)", self.surface_value(s, t)?)
            .link("max corner", corners)
            .fingerprint(self.fingerprint("corner-max", &[s, t]))
            .build())
    }

    /// Four-term chain from the Hermite–Hadamard inequality on a rectangle,
    /// applied to `H` on `[α, 1−α] × [β, 1−β]` (or the mirrored rectangle when
    /// `α, β > 1/2`). `α = β = 1` integrates over the whole unit square.
    pub fn check_dragomir_2d(&self, alpha: f64, beta: f64, opts: &CheckOptions) -> Result<InequalityVerdict> {
        check_unit(alpha, "alpha")?;
        check_unit(beta, "beta")?;
        let low = alpha < 0.5 && beta < 0.5;
        let high = alpha > 0.5 && beta > 0.5;
        if !low && !high {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must lie on the same side of 1/2, got ({alpha}, {beta})"
            )));
        }
        let suite = if alpha == 1.0 && beta == 1.0 { "dragomir-2d-cor26" } else { "dragomir-2d" };
        let xs = (alpha.min(1.0 - alpha), alpha.max(1.0 - alpha));
        let ys = (beta.min(1.0 - beta), beta.max(1.0 - beta));
        let (wx, wy) = (xs.1 - xs.0, ys.1 - ys.0);

        let centre = self.dragomir_h(0.5, 0.5)?;
        let corners = self.dragomir_h(alpha, beta)? + self.dragomir_h(1.0 - alpha, beta)?;
        // H is convex, so the corner sum bounds it on the rectangle.
        let mag = corners.max(1.0);
        let (tol_1d, tol_2d) = (opts.quad_tol * mag, opts.quad_tol_2d * mag);
        let qx = try_integrate_1d(|x| self.dragomir_h(x, 0.5), xs.0, xs.1, tol_1d)?;
        let qy = try_integrate_1d(|y| self.dragomir_h(0.5, y), ys.0, ys.1, tol_1d)?;
        let q2 = try_integrate_2d(|x, y| self.dragomir_h(x, y), xs, ys, tol_2d)?;

        let quad_error = tol_1d.max(qx.error_estimate) / wx
            + tol_1d.max(qy.error_estimate) / wy
            + 2.0 * tol_2d.max(q2.error_estimate) / (wx * wy);
        Ok(VerdictBuilder::new(suite, opts.tol_rel)
            .link("2 f(1/2)", 2.0 * centre)
            .link("sum of 1-D means", qx.value / wx + qy.value / wy)
            .link("2 x 2-D mean", 2.0 * q2.value / (wx * wy))
            .link("corner sum", corners)
            .allow_abs(quad_error)
            .fingerprint(self.fingerprint(suite, &[alpha, beta]))
            .build())
    }
}

/// `||| |A*XB|^r |||² ≤ ||| |AA*X|^r ||| · ||| |XBB*|^r |||` for arbitrary
/// `A, B, X`.
pub fn check_bhatia_davis(
    a: &Matrix,
    b: &Matrix,
    x: &Matrix,
    r: f64,
    spec: NormSpec,
    opts: &CheckOptions,
) -> Result<InequalityVerdict> {
    let lhs = uinorm_abs_pow(&(&(&a.adjoint() * x) * b), r, spec)?;
    let left = uinorm_abs_pow(&(&(a * &a.adjoint()) * x), r, spec)?;
    let right = uinorm_abs_pow(&(x * &(b * &b.adjoint())), r, spec)?;
    let fp = Fingerprinter::new()
        .text("bhatia-davis")
        .matrix(a)
        .matrix(b)
        .matrix(x)
        .number(r)
        .text(&spec.to_string())
        .finish();
    Ok(VerdictBuilder::new("bhatia-davis", opts.tol_rel)
        .link("|||A*XB|^r|||^2", lhs * lhs)
        .link("|||AA*X|^r||| |||XBB*|^r|||", left * right)
        .fingerprint(fp)
        .build())
}

/// `points` equally spaced nodes on `[0, 1]` including both ends.
pub fn unit_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidParams(format!("grid needs at least 2 points, got {points}")));
    }
    let last = (points - 1) as f64;
    Ok((0..points).map(|k| k as f64 / last).collect())
}

fn check_unit(v: f64, name: &str) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} must lie in [0, 1], got {v}")))
    }
}

fn check_exponent(v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("exponent must be finite and >= 0, got {v}")))
    }
}
