//! Functions of Hermitian matrices through the spectral decomposition.
//!
//! Powers use the convention `0^0 = 1`, so `A^0 = I` even when `A` is
//! singular. Eigenvalues in `[−τ·‖A‖, 0)` are treated as rounding noise and
//! clamped to zero before any function is applied.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::eig::{herm_eig_default, HermEig};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Relative threshold below which negative eigenvalues are clamped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Relative floor on the smallest eigenvalue for negative powers.
pub const PD_TOL: f64 = 1e-10;

/// A real function on (a subset of) `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ScalarFn {
    /// `t^α`; `0^0 = 1`.
    Pow(f64),
    Sqrt,
    /// `log(1 + t)`.
    Log1p,
    /// `t / log(1 + t)`, defined for `t > 0`.
    TOverLog1p,
    /// Piecewise-linear interpolation through `(xs[i], ys[i])`, xs increasing.
    Table { xs: Vec<f64>, ys: Vec<f64> },
    Product(Box<ScalarFn>, Box<ScalarFn>),
    Quotient(Box<ScalarFn>, Box<ScalarFn>),
}

impl ScalarFn {
    pub fn table(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(Error::InvalidParams("table needs at least two (x, y) pairs".into()));
        }
        if !xs.windows(2).all(|w| w[0] < w[1]) || !xs.iter().chain(&ys).all(|v| v.is_finite()) {
            return Err(Error::InvalidParams("table abscissae must be finite and increasing".into()));
        }
        Ok(Self::Table { xs, ys })
    }

    pub fn product(f: ScalarFn, g: ScalarFn) -> Self {
        Self::Product(Box::new(f), Box::new(g))
    }

    pub fn quotient(f: ScalarFn, g: ScalarFn) -> Self {
        Self::Quotient(Box::new(f), Box::new(g))
    }

    /// Closed domain bounds `(lo, hi, lo_open)`.
    pub fn domain(&self) -> (f64, f64, bool) {
        match self {
            Self::Pow(a) if *a < 0.0 => (0.0, f64::INFINITY, true),
            Self::Pow(_) | Self::Sqrt | Self::Log1p => (0.0, f64::INFINITY, false),
            Self::TOverLog1p => (0.0, f64::INFINITY, true),
            Self::Table { xs, .. } => (xs[0], xs[xs.len() - 1], false),
            Self::Product(f, g) | Self::Quotient(f, g) => {
                let (a0, a1, ao) = f.domain();
                let (b0, b1, bo) = g.domain();
                let lo = a0.max(b0);
                let lo_open = (ao && a0 >= b0) || (bo && b0 >= a0);
                (lo, a1.min(b1), lo_open)
            }
        }
    }

    pub fn in_domain(&self, t: f64) -> bool {
        let (lo, hi, lo_open) = self.domain();
        t.is_finite() && t <= hi && (t > lo || (!lo_open && t == lo))
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !self.in_domain(t) {
            return Err(self.domain_error(t));
        }
        let v = match self {
            Self::Pow(a) => {
                if *a == 0.0 {
                    1.0
                } else {
                    t.powf(*a)
                }
            }
            Self::Sqrt => t.sqrt(),
            Self::Log1p => t.ln_1p(),
            Self::TOverLog1p => t / t.ln_1p(),
            Self::Table { xs, ys } => {
                let k = xs.partition_point(|&x| x <= t).clamp(1, xs.len() - 1);
                let w = (t - xs[k - 1]) / (xs[k] - xs[k - 1]);
                ys[k - 1] + w * (ys[k] - ys[k - 1])
            }
            Self::Product(f, g) => f.eval(t)? * g.eval(t)?,
            Self::Quotient(f, g) => {
                let d = g.eval(t)?;
                if d == 0.0 {
                    return Err(self.domain_error(t));
                }
                f.eval(t)? / d
            }
        };
        if !v.is_finite() {
            return Err(self.domain_error(t));
        }
        Ok(v)
    }

    fn domain_error(&self, t: f64) -> Error {
        Error::DomainViolation { function: self.to_string(), value: t }
    }
}

impl fmt::Display for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pow(a) => write!(f, "pow:{a}"),
            Self::Sqrt => write!(f, "sqrt"),
            Self::Log1p => write!(f, "log1p"),
            Self::TOverLog1p => write!(f, "t_over_log1p"),
            Self::Table { xs, ys } => {
                write!(f, "table:")?;
                for (i, (x, y)) in xs.iter().zip(ys).enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{x},{y}")?;
                }
                Ok(())
            }
            Self::Product(a, b) => write!(f, "({a})*({b})"),
            Self::Quotient(a, b) => write!(f, "({a})/({b})"),
        }
    }
}

impl FromStr for ScalarFn {
    type Err = Error;

    /// Parses the atomic forms `pow:α`, `sqrt`, `log1p`, `t_over_log1p` and
    /// `table:x0,y0;x1,y1;...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParams(format!("unknown scalar function '{s}'"));
        match s {
            "sqrt" => return Ok(Self::Sqrt),
            "log1p" => return Ok(Self::Log1p),
            "t_over_log1p" => return Ok(Self::TOverLog1p),
            "identity" => return Ok(Self::Pow(1.0)),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("pow:") {
            let a: f64 = rest.parse().map_err(|_| bad())?;
            if !a.is_finite() {
                return Err(bad());
            }
            return Ok(Self::Pow(a));
        }
        if let Some(rest) = s.strip_prefix("table:") {
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for pair in rest.split(';') {
                let (x, y) = pair.split_once(',').ok_or_else(bad)?;
                xs.push(x.trim().parse().map_err(|_| bad())?);
                ys.push(y.trim().parse().map_err(|_| bad())?);
            }
            return Self::table(xs, ys);
        }
        Err(bad())
    }
}

impl TryFrom<String> for ScalarFn {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ScalarFn> for String {
    fn from(f: ScalarFn) -> String {
        f.to_string()
    }
}

/// A positive semidefinite matrix with its clamped spectral decomposition,
/// reusable for many powers.
#[derive(Debug, Clone)]
pub struct PsdMatrix {
    matrix: Matrix,
    eig: HermEig,
}

impl PsdMatrix {
    pub fn new(a: &Matrix) -> Result<Self> {
        let mut eig = herm_eig_default(a)?;
        let scale = eig.spectral_scale();
        let min = eig.min();
        if min < -PSD_TOL * scale {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        for l in &mut eig.eigenvalues {
            *l = l.max(0.0);
        }
        Ok(Self { matrix: a.hermitian_part(), eig })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eig(&self) -> &HermEig {
        &self.eig
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.eig.min() >= PD_TOL * self.eig.spectral_scale() && self.eig.min() > 0.0
    }

    /// Eigenvalues of `A^t` in the order of the stored eigenvectors.
    pub fn power_spectrum(&self, t: f64) -> Result<Vec<f64>> {
        if t < 0.0 && !self.is_positive_definite() {
            return Err(Error::SingularForNegativePower { min_eigenvalue: self.eig.min() });
        }
        Ok(self.eig.eigenvalues.iter().map(|&l| if t == 0.0 { 1.0 } else { l.powf(t) }).collect())
    }

    /// `A^t`. Exactly `I` at `t = 0` and the input at `t = 1`.
    pub fn power(&self, t: f64) -> Result<Matrix> {
        if t == 0.0 {
            return Ok(Matrix::identity(self.n()));
        }
        if t == 1.0 {
            return Ok(self.matrix.clone());
        }
        Ok(self.eig.compose(&self.power_spectrum(t)?))
    }

    pub fn apply(&self, f: &ScalarFn) -> Result<Matrix> {
        let values = self.eig.eigenvalues.iter().map(|&l| f.eval(l)).collect::<Result<Vec<_>>>()?;
        Ok(self.eig.compose(&values))
    }
}

/// `A^t` for PSD `A` (positive definite when `t < 0`).
pub fn psd_power(a: &Matrix, t: f64) -> Result<Matrix> {
    if !t.is_finite() {
        return Err(Error::InvalidParams(format!("power must be finite, got {t}")));
    }
    PsdMatrix::new(a)?.power(t)
}

/// `f(A) = V diag(f(λ)) V*` for Hermitian `A`.
///
/// Eigenvalues within `PSD_TOL` of zero from below are clamped to zero
/// first; anything else outside the domain of `f` is a
/// [`Error::DomainViolation`].
pub fn matrix_fn(a: &Matrix, f: &ScalarFn) -> Result<Matrix> {
    let eig = herm_eig_default(a)?;
    let scale = eig.spectral_scale();
    let values = eig
        .eigenvalues
        .iter()
        .map(|&l| {
            let l = if l < 0.0 && l >= -PSD_TOL * scale { 0.0 } else { l };
            f.eval(l)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(eig.compose(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn diagonal_square_root() {
        let a = Matrix::diag_real(&[4.0, 9.0]).unwrap();
        let r = psd_power(&a, 0.5).unwrap();
        assert!(r.approx_eq(&Matrix::diag_real(&[2.0, 3.0]).unwrap(), 1e-14));
    }

    #[test]
    fn zeroth_power_is_identity_even_when_singular() {
        let a = Matrix::diag_real(&[1.0, 0.0]).unwrap();
        assert_eq!(psd_power(&a, 0.0).unwrap(), Matrix::identity(2));
        assert_eq!(psd_power(&a, 1.0).unwrap(), a);
        assert!(matches!(psd_power(&a, -0.5), Err(Error::SingularForNegativePower { .. })));
    }

    #[test]
    fn square_root_of_two_by_two() {
        let a = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let r = psd_power(&a, 0.5).unwrap();
        // Eigenvectors (1,1)/√2, (1,−1)/√2 with eigenvalues √3, 1.
        let (s3, one) = (3f64.sqrt(), 1.0);
        let expected = Matrix::from_rows(&[
            &[(s3 + one) / 2.0, (s3 - one) / 2.0],
            &[(s3 - one) / 2.0, (s3 + one) / 2.0],
        ])
        .unwrap();
        assert!(r.approx_eq(&expected, 1e-14));
        assert!((&r * &r).approx_eq(&a, 1e-13));
    }

    #[test]
    fn rejects_indefinite() {
        let a = Matrix::diag_real(&[1.0, -0.1]).unwrap();
        assert!(matches!(psd_power(&a, 0.5), Err(Error::NotPsd { .. })));
        // Tiny negative eigenvalues are clamped.
        let a = Matrix::diag_real(&[1.0, -1e-13]).unwrap();
        let r = psd_power(&a, 0.5).unwrap();
        assert_eq!(r[(1, 1)].re, 0.0);
    }

    #[test]
    fn matrix_functions_on_diagonals() {
        let a = Matrix::diag_real(&[1.0, E - 1.0]).unwrap();
        let r = matrix_fn(&a, &ScalarFn::Log1p).unwrap();
        assert!(r.approx_eq(&Matrix::diag_real(&[2f64.ln(), 1.0]).unwrap(), 1e-14));

        let r = matrix_fn(&Matrix::identity(3), &ScalarFn::Sqrt).unwrap();
        assert!(r.approx_eq(&Matrix::identity(3), 1e-15));

        let r = matrix_fn(&Matrix::diag_real(&[4.0]).unwrap(), &ScalarFn::TOverLog1p).unwrap();
        assert!((r[(0, 0)].re - 4.0 / 5f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn domain_violations() {
        let a = Matrix::diag_real(&[1.0, -2.0]).unwrap();
        assert!(matches!(matrix_fn(&a, &ScalarFn::Sqrt), Err(Error::DomainViolation { .. })));
        assert!(ScalarFn::TOverLog1p.eval(0.0).is_err());
        assert!(ScalarFn::Pow(-1.0).eval(0.0).is_err());
        assert_eq!(ScalarFn::Pow(0.0).eval(0.0).unwrap(), 1.0);
    }

    #[test]
    fn scalar_fn_string_forms() {
        for s in ["pow:0.25", "sqrt", "log1p", "t_over_log1p", "table:0,0;1,2;3,3"] {
            let f: ScalarFn = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        let t: ScalarFn = "table:0,0;1,2;3,3".parse().unwrap();
        assert_eq!(t.eval(0.5).unwrap(), 1.0);
        assert_eq!(t.eval(2.0).unwrap(), 2.5);
        assert!(t.eval(3.5).is_err());
        assert!("cube".parse::<ScalarFn>().is_err());
    }
}
