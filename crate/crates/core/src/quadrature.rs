//! Adaptive Simpson quadrature with Richardson error control, and its tensor
//! product on rectangles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integrand evaluations allowed per axis.
pub const EVALUATION_BUDGET: usize = 10_000;

const MIN_DEPTH: u32 = 2;
const MAX_DEPTH: u32 = 48;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadResult {
    fn zero() -> Self {
        Self { value: 0.0, error_estimate: 0.0, evaluations: 0 }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

/// `∫_a^b f` to absolute accuracy `tol` for integrands with a bounded fourth
/// derivative. Exact (up to rounding) for cubics.
pub fn integrate_1d<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_1d(|x| Ok(f(x)), a, b, tol)
}

/// [`integrate_1d`] for integrands that can fail.
pub fn try_integrate_1d<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    check_interval(a, b, tol)?;
    if a == b {
        return Ok(QuadResult::zero());
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a)?, f(m)?, f(b)?);
    let mut evaluations = 3;
    let mut stack = vec![Panel { a, b, fa, fm, fb, whole: simpson(a, b, fa, fm, fb), tol, depth: 0 }];
    let mut value = 0.0;
    let mut error_estimate = 0.0;

    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let (flm, frm) = (f(lm)?, f(rm)?);
        evaluations += 2;
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;

        if p.depth >= MIN_DEPTH && delta.abs() <= 15.0 * p.tol {
            value += left + right + delta / 15.0;
            error_estimate += delta.abs() / 15.0;
            continue;
        }
        if p.depth >= MAX_DEPTH || evaluations >= EVALUATION_BUDGET {
            error_estimate += delta.abs() / 15.0;
            return Err(Error::BudgetExceeded { budget: EVALUATION_BUDGET, error_estimate });
        }
        let depth = p.depth + 1;
        let tol = 0.5 * p.tol;
        stack.push(Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right, tol, depth });
        stack.push(Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left, tol, depth });
    }
    Ok(QuadResult { value, error_estimate, evaluations })
}

/// `∫_a^b ∫_c^d F(x, y) dy dx` by iterated adaptive Simpson. Half of `tol` is
/// given to the outer integral and half, divided by `b − a`, to each inner
/// one.
pub fn integrate_2d<F>(mut f: F, x_range: (f64, f64), y_range: (f64, f64), tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64, f64) -> f64,
{
    try_integrate_2d(|x, y| Ok(f(x, y)), x_range, y_range, tol)
}

pub fn try_integrate_2d<F>(mut f: F, (a, b): (f64, f64), (c, d): (f64, f64), tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    check_interval(a, b, tol)?;
    check_interval(c, d, tol)?;
    if a == b || c == d {
        return Ok(QuadResult::zero());
    }
    let inner_tol = 0.5 * tol / (b - a);
    let mut inner_evaluations = 0;
    let mut worst_inner_error = 0.0_f64;
    let outer = try_integrate_1d(
        |x| {
            let r = try_integrate_1d(|y| f(x, y), c, d, inner_tol)?;
            inner_evaluations += r.evaluations;
            worst_inner_error = worst_inner_error.max(r.error_estimate);
            Ok(r.value)
        },
        a,
        b,
        0.5 * tol,
    )?;
    Ok(QuadResult {
        value: outer.value,
        error_estimate: outer.error_estimate + (b - a) * worst_inner_error,
        evaluations: inner_evaluations,
    })
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn check_interval(a: f64, b: f64, tol: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(Error::InvalidParams(format!("integration bounds must satisfy a <= b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!("quadrature tolerance must be positive, got {tol}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_constants() {
        let r = integrate_1d(|_| 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        let r = integrate_1d(|s| s * s, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
        let r = integrate_1d(|s| s * s * s - 2.0 * s, -1.0, 2.0, 1e-12).unwrap();
        assert!((r.value - (15.0 / 4.0 - 3.0)).abs() < 1e-14);
        assert!(r.evaluations >= 5);
    }

    #[test]
    fn exponential_sum_against_antiderivative() {
        // ∫₀¹ 4^s + 4^{1−s} ds = 2·(4 − 1)/ln 4.
        let exact = 2.0 * 3.0 / 4f64.ln();
        let r = integrate_1d(|s| 4f64.powf(s) + 4f64.powf(1.0 - s), 0.0, 1.0, 1e-11).unwrap();
        assert!((r.value - exact).abs() < 1e-11);
        assert!((r.value - 4.328085).abs() < 1e-6);
    }

    #[test]
    fn empty_interval_and_bad_input() {
        let r = integrate_1d(|s| s.exp(), 0.3, 0.3, 1e-9).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(integrate_1d(|s| s, 1.0, 0.0, 1e-9).is_err());
        assert!(integrate_1d(|s| s, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn budget_exceeded_on_discontinuity_at_tiny_tolerance() {
        let r = integrate_1d(|s| if s < 1.0 / 3.0 { 0.0 } else { 1.0 }, 0.0, 1.0, 1e-300);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn two_dimensional_boxes() {
        let r = integrate_2d(|_, _| 1.0, (0.0, 1.0), (0.0, 1.0), 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        let r = integrate_2d(|x, y| x * y, (0.0, 1.0), (0.0, 1.0), 1e-10).unwrap();
        assert!((r.value - 0.25).abs() < 1e-14);
        let r = integrate_2d(|x, y| x + y * y, (0.0, 1.0), (0.0, 1.0), 1e-10).unwrap();
        assert!((r.value - (0.5 + 1.0 / 3.0)).abs() < 1e-14);
        let r = integrate_2d(|x, y| x * y, (0.0, 0.0), (0.0, 1.0), 1e-10).unwrap();
        assert_eq!(r.value, 0.0);
    }
}
