//! Kwong matrices and the numerical-radius Heinz inequalities.

use super::verdict::{Fingerprinter, InequalityVerdict, VerdictBuilder};
use super::CheckOptions;
use crate::error::{Error, Result};
use crate::linalg::{herm_eig_default, Matrix, PsdMatrix, ScalarFn};
use crate::norms::{numerical_radius, spectral_norm};

/// Relative tolerance on the smallest eigenvalue of a Kwong matrix.
pub const KWONG_TOL: f64 = 1e-10;

/// Eigenvalues closer than this (relative to the largest) count as one point.
const DISTINCT_REL: f64 = 1e-9;

/// Headroom for rounding in the `f(t) g(t) ≤ t` precondition.
const PRODUCT_REL: f64 = 1e-12;

/// `[(f(a_i) + f(a_j)) / (a_i + a_j)]` for distinct positive points.
pub fn kwong_matrix(points: &[f64], f: &ScalarFn) -> Result<Matrix> {
    if points.is_empty() {
        return Err(Error::InvalidParams("Kwong matrix needs at least one point".into()));
    }
    if let Some(&p) = points.iter().find(|&&p| !(p > 0.0) || !p.is_finite()) {
        return Err(Error::DomainViolation { function: f.to_string(), value: p });
    }
    for (i, a) in points.iter().enumerate() {
        if points[..i].contains(a) {
            return Err(Error::InvalidParams(format!("Kwong points must be distinct, {a} repeats")));
        }
    }
    let values = points.iter().map(|&p| f.eval(p)).collect::<Result<Vec<_>>>()?;
    let n = points.len();
    let data: Vec<f64> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            (values[i] + values[j]) / (points[i] + points[j])
        })
        .collect();
    Matrix::from_real(n, &data)
}

/// Whether the Kwong matrix of `f` on `points` is PSD up to
/// `tol · max|λ|`.
pub fn is_kwong_sample(points: &[f64], f: &ScalarFn, tol: f64) -> Result<bool> {
    let eig = herm_eig_default(&kwong_matrix(points, f)?)?;
    Ok(eig.min() >= -tol * eig.spectral_scale())
}

/// Chain `[0, λ_min]` for the Kwong matrix of `f` on `points`, measured
/// against its largest eigenvalue.
pub fn check_kwong_psd(points: &[f64], f: &ScalarFn, tol_rel: f64) -> Result<InequalityVerdict> {
    let k = kwong_matrix(points, f)?;
    let eig = herm_eig_default(&k)?;
    let fp = points.iter().fold(Fingerprinter::new().text("kwong-psd").text(&f.to_string()), |h, &p| h.number(p));
    Ok(VerdictBuilder::new("kwong-psd", tol_rel)
        .link("0", 0.0)
        .link("min eigenvalue", eig.min())
        .scale_floor(eig.spectral_scale())
        .fingerprint(fp.finish())
        .build())
}

/// Sorted values with near-duplicates (relative to the largest magnitude)
/// merged.
pub fn distinct_points(values: &[f64]) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let scale = sorted.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut out: Vec<f64> = Vec::with_capacity(sorted.len());
    for v in sorted {
        if out.last().is_none_or(|&last| v - last > DISTINCT_REL * scale) {
            out.push(v);
        }
    }
    out
}

/// `ω(f(A) X g(A) + g(A) X f(A)) ≤ ω(AX + XA)` for positive definite `A`.
///
/// The hypotheses are checked on the spectrum of `A`: the Kwong matrix of
/// `f/g` must be PSD there and `f(λ) g(λ) ≤ λ` at every eigenvalue.
pub fn check_thm43(a: &Matrix, x: &Matrix, f: &ScalarFn, g: &ScalarFn, opts: &CheckOptions) -> Result<InequalityVerdict> {
    omega_heinz("thm43", a, x, f, g, opts)
}

/// [`check_thm43`] with `f = t^α`, `g = t^{1−α}`.
pub fn check_cor44(a: &Matrix, x: &Matrix, alpha: f64, opts: &CheckOptions) -> Result<InequalityVerdict> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParams(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    omega_heinz("cor44", a, x, &ScalarFn::Pow(alpha), &ScalarFn::Pow(1.0 - alpha), opts)
}

/// [`check_thm43`] with `f = log(1 + t)`, `g = t / log(1 + t)`.
pub fn check_example45(a: &Matrix, x: &Matrix, opts: &CheckOptions) -> Result<InequalityVerdict> {
    omega_heinz("example45", a, x, &ScalarFn::Log1p, &ScalarFn::TOverLog1p, opts)
}

fn omega_heinz(
    suite: &str,
    a: &Matrix,
    x: &Matrix,
    f: &ScalarFn,
    g: &ScalarFn,
    opts: &CheckOptions,
) -> Result<InequalityVerdict> {
    if a.n() != x.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: x.n() });
    }
    let psd = PsdMatrix::new(a)?;
    if !psd.is_positive_definite() {
        return Err(Error::InvalidParams(format!(
            "A must be positive definite, smallest eigenvalue {}",
            psd.eig().min()
        )));
    }
    let spectrum = distinct_points(&psd.eig().eigenvalues);
    let ratio = ScalarFn::quotient(f.clone(), g.clone());
    if !is_kwong_sample(&spectrum, &ratio, KWONG_TOL)? {
        return Err(Error::KwongPreconditionFailed(format!("{ratio} is not Kwong on the spectrum {spectrum:?}")));
    }
    for &l in &spectrum {
        let fg = f.eval(l)? * g.eval(l)?;
        if fg > l * (1.0 + PRODUCT_REL) {
            return Err(Error::KwongPreconditionFailed(format!("f(t) g(t) = {fg} exceeds t = {l}")));
        }
    }

    let fa = psd.apply(f)?;
    let ga = psd.apply(g)?;
    let lhs = &(&(&fa * x) * &ga) + &(&(&ga * x) * &fa);
    let am = psd.matrix();
    let rhs = &(am * x) + &(x * am);
    let omega_tol = opts.omega_tol * spectral_norm(&lhs).max(spectral_norm(&rhs)).max(1.0);
    let left = numerical_radius(&lhs, omega_tol)?;
    let right = numerical_radius(&rhs, omega_tol)?;

    let fp = Fingerprinter::new()
        .text(suite)
        .matrix(a)
        .matrix(x)
        .text(&f.to_string())
        .text(&g.to_string())
        .finish();
    Ok(VerdictBuilder::new(suite, opts.tol_rel)
        .link("w(f(A)Xg(A)+g(A)Xf(A))", left.value)
        .link("w(AX+XA)", right.value)
        .allow_abs(2.0 * omega_tol)
        .fingerprint(fp)
        .build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kwong_matrix_examples() {
        let k = kwong_matrix(&[3.0], &ScalarFn::Log1p).unwrap();
        assert!((k[(0, 0)].re - 4f64.ln() / 3.0).abs() < 1e-15);

        let j = kwong_matrix(&[0.5, 2.0, 7.0], &ScalarFn::Pow(1.0)).unwrap();
        assert!(j.approx_eq(&Matrix::ones(3), 1e-15));

        let k = kwong_matrix(&[1.0, 4.0], &ScalarFn::Sqrt).unwrap();
        let want = Matrix::from_rows(&[&[1.0, 0.6], &[0.6, 0.5]]).unwrap();
        assert!(k.approx_eq(&want, 1e-15));
        // 2×2 oracle: trace 1.5, determinant 0.5 − 0.36 = 0.14 > 0.
        assert!(is_kwong_sample(&[1.0, 4.0], &ScalarFn::Sqrt, KWONG_TOL).unwrap());

        assert!(matches!(kwong_matrix(&[1.0, -2.0], &ScalarFn::Sqrt), Err(Error::DomainViolation { .. })));
        assert!(kwong_matrix(&[1.0, 1.0], &ScalarFn::Sqrt).is_err());
    }

    #[test]
    fn cube_is_not_kwong() {
        // det = (2·0.001/0.2)(2·1000/20) − ((0.001 + 1000)/10.1)² < 0.
        let det = (0.002 / 0.2) * (2000.0 / 20.0) - (1000.001f64 / 10.1).powi(2);
        assert!(det < 0.0);
        assert!(!is_kwong_sample(&[0.1, 10.0], &ScalarFn::Pow(3.0), KWONG_TOL).unwrap());
        let v = check_kwong_psd(&[0.1, 10.0], &ScalarFn::Pow(3.0), 1e-8).unwrap();
        assert!(!v.pass);
        assert!(check_kwong_psd(&[0.1, 10.0], &ScalarFn::Sqrt, 1e-8).unwrap().pass);
    }

    #[test]
    fn distinct_points_merges_near_duplicates() {
        assert_eq!(distinct_points(&[2.0, 1.0, 2.0 + 1e-13, 0.5]), vec![0.5, 1.0, 2.0]);
    }

    #[test]
    fn power_pair_nilpotent_oracle() {
        let opts = CheckOptions::default();
        let a = Matrix::diag_real(&[1.0, 4.0]).unwrap();
        let x = Matrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        // ω of c·E12 is |c|/2: LHS = ω(4 E12) = 2, RHS = ω(5 E12) = 2.5.
        let v = check_cor44(&a, &x, 0.5, &opts).unwrap();
        assert!((v.links[0].value - 2.0).abs() < 1e-7);
        assert!((v.links[1].value - 2.5).abs() < 1e-7);
        assert!(v.pass);

        for alpha in [0.0, 1.0] {
            let v = check_cor44(&a, &x, alpha, &opts).unwrap();
            assert!((v.links[0].value - v.links[1].value).abs() < 2e-8);
        }
    }

    #[test]
    fn commuting_cases() {
        let opts = CheckOptions::default();
        let a = Matrix::diag_real(&[0.5, 2.0, 3.0]).unwrap();
        let i = Matrix::identity(3);
        let v = check_example45(&a, &i, &opts).unwrap();
        assert!((v.links[0].value - 6.0).abs() < 4.0 * opts.omega_tol);
        assert!((v.links[1].value - 6.0).abs() < 4.0 * opts.omega_tol);

        let v = check_thm43(&a, &i, &ScalarFn::Sqrt, &ScalarFn::Sqrt, &opts).unwrap();
        assert!(v.pass);

        let s = Matrix::diag_real(&[2.0]).unwrap();
        let v = check_example45(&s, &Matrix::diag_real(&[3.0]).unwrap(), &opts).unwrap();
        assert!((v.links[0].value - 12.0).abs() < 1e-7 && (v.links[1].value - 12.0).abs() < 1e-7);
    }

    #[test]
    fn preconditions_are_enforced() {
        let opts = CheckOptions::default();
        let a = Matrix::diag_real(&[0.1, 10.0]).unwrap();
        let x = Matrix::ones(2);
        let r = check_thm43(&a, &x, &ScalarFn::Pow(2.0), &ScalarFn::Pow(-1.0), &opts);
        assert!(matches!(r, Err(Error::KwongPreconditionFailed(_))));
        // f = 2t, g = 1: f/g is Kwong but f g = 2t > t.
        let doubled = ScalarFn::table(vec![0.0, 20.0], vec![0.0, 40.0]).unwrap();
        let r = check_thm43(&a, &x, &doubled, &ScalarFn::Pow(0.0), &opts);
        assert!(matches!(r, Err(Error::KwongPreconditionFailed(_))));

        let singular = Matrix::diag_real(&[0.0, 1.0]).unwrap();
        assert!(check_cor44(&singular, &x, 0.5, &opts).is_err());
    }
}
