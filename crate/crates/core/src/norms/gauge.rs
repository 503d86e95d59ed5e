use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, Matrix, SingularSpectrum};

/// A unitarily invariant norm, identified by its symmetric gauge function.
///
/// Canonical string forms: `trace`, `frobenius`, `spectral`, `schatten:p`
/// (with `p` possibly `inf`) and `kyfan:k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NormSpec {
    Schatten(f64),
    KyFan(usize),
}

impl NormSpec {
    pub const TRACE: NormSpec = NormSpec::Schatten(1.0);
    pub const FROBENIUS: NormSpec = NormSpec::Schatten(2.0);
    pub const SPECTRAL: NormSpec = NormSpec::Schatten(f64::INFINITY);

    pub fn validate(&self, len: usize) -> Result<()> {
        match *self {
            NormSpec::Schatten(p) if p.is_nan() || p < 1.0 => {
                Err(Error::InvalidSpec(format!("Schatten exponent must be >= 1, got {p}")))
            }
            NormSpec::KyFan(k) if k == 0 || k > len => {
                Err(Error::InvalidSpec(format!("Ky Fan index {k} outside 1..={len}")))
            }
            _ => Ok(()),
        }
    }

    /// Smallest dimension at which this spec can be evaluated.
    pub fn min_dimension(&self) -> usize {
        match *self {
            NormSpec::KyFan(k) => k,
            NormSpec::Schatten(_) => 1,
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NormSpec::Schatten(p) if p == 1.0 => write!(f, "trace"),
            NormSpec::Schatten(p) if p == 2.0 => write!(f, "frobenius"),
            NormSpec::Schatten(p) if p == f64::INFINITY => write!(f, "spectral"),
            NormSpec::Schatten(p) => write!(f, "schatten:{p}"),
            NormSpec::KyFan(k) => write!(f, "kyfan:{k}"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidSpec(format!("unrecognized norm '{s}'"));
        let spec = match s {
            "trace" => Self::TRACE,
            "frobenius" => Self::FROBENIUS,
            "spectral" | "operator" => Self::SPECTRAL,
            _ => {
                if let Some(p) = s.strip_prefix("schatten:") {
                    let p = match p {
                        "inf" | "infinity" => f64::INFINITY,
                        _ => p.parse().map_err(|_| bad())?,
                    };
                    Self::Schatten(p)
                } else if let Some(k) = s.strip_prefix("kyfan:") {
                    Self::KyFan(k.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        };
        if let NormSpec::Schatten(p) = spec {
            if p.is_nan() || p < 1.0 {
                return Err(Error::InvalidSpec(format!("Schatten exponent must be >= 1, got {p}")));
            }
        }
        if spec == NormSpec::KyFan(0) {
            return Err(Error::InvalidSpec("Ky Fan index must be >= 1".into()));
        }
        Ok(spec)
    }
}

impl TryFrom<String> for NormSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NormSpec> for String {
    fn from(s: NormSpec) -> String {
        s.to_string()
    }
}

/// Evaluates the symmetric gauge of `spec` on a singular spectrum.
pub fn gauge(sv: &SingularSpectrum, spec: NormSpec) -> Result<f64> {
    spec.validate(sv.len())?;
    let s = sv.values();
    Ok(match spec {
        NormSpec::KyFan(k) => s[..k].iter().sum(),
        NormSpec::Schatten(p) if p == f64::INFINITY => sv.largest(),
        NormSpec::Schatten(p) if p == 1.0 => s.iter().sum(),
        NormSpec::Schatten(p) => {
            let m = sv.largest();
            if m == 0.0 {
                0.0
            } else {
                m * s.iter().map(|&x| (x / m).powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    })
}

/// `||| |M|^r |||`, computed from the singular values of `M` raised to `r`.
///
/// At `r = 0` every singular value maps to 1 (`|M|^0 = I`).
pub fn uinorm_abs_pow(m: &Matrix, r: f64, spec: NormSpec) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidParams(format!("exponent r must be finite and >= 0, got {r}")));
    }
    spec.validate(m.n())?;
    gauge(&singular_values(m)?.powf(r), spec)
}

/// Unitarily invariant norm `|||M|||`.
pub fn uinorm(m: &Matrix, spec: NormSpec) -> Result<f64> {
    uinorm_abs_pow(m, 1.0, spec)
}

pub fn spectral_norm(m: &Matrix) -> f64 {
    singular_values(m).map(|s| s.largest()).unwrap_or_else(|_| m.frobenius())
}
