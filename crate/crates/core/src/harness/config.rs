use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::generate::DEFAULT_PD_FLOOR;
use crate::error::{Error, Result};
use crate::inequalities::CheckOptions;
use crate::norms::NormSpec;

/// Stable suite identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SuiteId {
    CsBasic,
    BhatiaDavis,
    HhChain,
    CornerMax,
    Dragomir2d,
    Dragomir2dCor26,
    Thm32,
    Thm33,
    ConvexityF,
    ConvexityG,
    JensenPhi,
    KwongPsd,
    Thm43,
    Cor44,
    Example45,
}

impl SuiteId {
    pub const ALL: [SuiteId; 15] = [
        SuiteId::CsBasic,
        SuiteId::BhatiaDavis,
        SuiteId::HhChain,
        SuiteId::CornerMax,
        SuiteId::Dragomir2d,
        SuiteId::Dragomir2dCor26,
        SuiteId::Thm32,
        SuiteId::Thm33,
        SuiteId::ConvexityF,
        SuiteId::ConvexityG,
        SuiteId::JensenPhi,
        SuiteId::KwongPsd,
        SuiteId::Thm43,
        SuiteId::Cor44,
        SuiteId::Example45,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::CsBasic => "cs-basic",
            SuiteId::BhatiaDavis => "bhatia-davis",
            SuiteId::HhChain => "hh-chain",
            SuiteId::CornerMax => "corner-max",
            SuiteId::Dragomir2d => "dragomir-2d",
            SuiteId::Dragomir2dCor26 => "dragomir-2d-cor26",
            SuiteId::Thm32 => "thm32",
            SuiteId::Thm33 => "thm33",
            SuiteId::ConvexityF => "convexity-f",
            SuiteId::ConvexityG => "convexity-G",
            SuiteId::JensenPhi => "jensen-phi",
            SuiteId::KwongPsd => "kwong-psd",
            SuiteId::Thm43 => "thm43",
            SuiteId::Cor44 => "cor44",
            SuiteId::Example45 => "example45",
        }
    }

    /// Parses `all` or a comma-separated list of ids.
    pub fn parse_list(s: &str) -> Result<Vec<SuiteId>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        s.split(',').filter(|p| !p.trim().is_empty()).map(|p| p.trim().parse()).collect()
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite id {s:?}")))
    }
}

impl TryFrom<String> for SuiteId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SuiteId> for String {
    fn from(id: SuiteId) -> Self {
        id.as_str().to_owned()
    }
}

/// Parameter values swept by the suites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub mu: Vec<f64>,
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    pub p: Vec<f64>,
    /// Exponents for `t^α` in the numerical-radius and Kwong suites.
    pub alpha: Vec<f64>,
    /// `(α, β)` rectangles for `dragomir-2d`.
    pub dragomir: Vec<(f64, f64)>,
}

impl Default for ParamGrid {
    fn default() -> Self {
        let tenths: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let alpha = tenths.iter().copied().filter(|&a| a != 0.5).collect();
        Self {
            mu: tenths.clone(),
            s: tenths.clone(),
            t: tenths,
            p: vec![0.1, 0.25, 0.5, 0.75, 0.9],
            alpha,
            dragomir: vec![(0.0, 0.0), (0.25, 0.25)],
        }
    }
}

impl ParamGrid {
    fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: &[f64]| -> Result<()> {
            match v.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                Some(x) => Err(Error::Config(format!("{name} value {x} outside [0, 1]"))),
                None if v.is_empty() => Err(Error::Config(format!("{name} grid is empty"))),
                None => Ok(()),
            }
        };
        unit("mu", &self.mu)?;
        unit("s", &self.s)?;
        unit("t", &self.t)?;
        unit("alpha", &self.alpha)?;
        if self.p.is_empty() {
            return Err(Error::Config("p grid is empty".into()));
        }
        if let Some(p) = self.p.iter().find(|&&p| !(p > 0.0 && p < 1.0)) {
            return Err(Error::Config(format!("p value {p} outside (0, 1)")));
        }
        if self.dragomir.is_empty() {
            return Err(Error::Config("dragomir grid is empty".into()));
        }
        for &(a, b) in &self.dragomir {
            let same_side = (a < 0.5 && b < 0.5 && a >= 0.0 && b >= 0.0) || (a > 0.5 && b > 0.5 && a <= 1.0 && b <= 1.0);
            if !same_side {
                return Err(Error::Config(format!("dragomir pair ({a}, {b}) must lie on one side of 1/2")));
            }
        }
        Ok(())
    }
}

/// Everything that determines a run. Two runs with equal configs produce
/// identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub suites: Vec<SuiteId>,
    pub n_min: usize,
    pub n_max: usize,
    pub r_values: Vec<f64>,
    pub norms: Vec<NormSpec>,
    pub grid: ParamGrid,
    pub trials: usize,
    pub master_seed: u64,
    pub tol_rel: f64,
    pub omega_tol: f64,
    pub quad_tol: f64,
    pub quad_tol_2d: f64,
    /// Smallest eigenvalue shift for positive definite instances.
    pub pd_floor: f64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        let opts = CheckOptions::default();
        Self {
            suites: SuiteId::ALL.to_vec(),
            n_min: 1,
            n_max: 6,
            r_values: vec![0.5, 1.0, 2.0, 3.0],
            norms: vec![
                NormSpec::TRACE,
                NormSpec::FROBENIUS,
                NormSpec::SPECTRAL,
                NormSpec::Schatten(3.0),
                NormSpec::KyFan(2),
            ],
            grid: ParamGrid::default(),
            trials: 200,
            master_seed: 0,
            tol_rel: opts.tol_rel,
            omega_tol: opts.omega_tol,
            quad_tol: opts.quad_tol,
            quad_tol_2d: opts.quad_tol_2d,
            pd_floor: DEFAULT_PD_FLOOR,
        }
    }
}

impl TrialConfig {
    pub fn with_suites(suites: &[SuiteId]) -> Self {
        Self { suites: suites.to_vec(), ..Self::default() }
    }

    pub fn options(&self) -> CheckOptions {
        CheckOptions {
            tol_rel: self.tol_rel,
            quad_tol: self.quad_tol,
            quad_tol_2d: self.quad_tol_2d,
            omega_tol: self.omega_tol,
        }
    }

    pub fn dimensions(&self) -> RangeInclusive<usize> {
        self.n_min..=self.n_max
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::Config(format!("invalid dimension range {}..={}", self.n_min, self.n_max)));
        }
        if self.r_values.is_empty() || self.r_values.iter().any(|&r| !(r >= 0.0) || !r.is_finite()) {
            return Err(Error::Config("r values must be a nonempty list of finite reals >= 0".into()));
        }
        if self.norms.is_empty() {
            return Err(Error::Config("no norms selected".into()));
        }
        for spec in &self.norms {
            spec.validate(usize::MAX).map_err(|e| Error::Config(e.to_string()))?;
        }
        if self.norms.iter().all(|s| s.min_dimension() > self.n_min) {
            return Err(Error::Config(format!("no selected norm applies at n = {}", self.n_min)));
        }
        for (name, v) in [
            ("tol", self.tol_rel),
            ("omega-tol", self.omega_tol),
            ("quad-tol", self.quad_tol),
            ("quad-tol-2d", self.quad_tol_2d),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.pd_floor > 0.0) {
            return Err(Error::Config(format!("pd floor must be positive, got {}", self.pd_floor)));
        }
        self.grid.validate()
    }
}

/// Parses `4`, `1..6`, `1..=6` or `1-6` (bounds inclusive).
pub fn parse_dim_range(s: &str) -> Result<(usize, usize)> {
    let s = s.trim();
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|_| Error::Config(format!("bad dimension {v:?}")));
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (parse(a)?, parse(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (parse(a)?, parse(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (parse(a)?, parse(b)?)
    } else {
        let n = parse(s)?;
        (n, n)
    };
    if lo == 0 || lo > hi {
        return Err(Error::Config(format!("invalid dimension range {s:?}")));
    }
    Ok((lo, hi))
}

/// Parses a comma-separated list.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<T>().map_err(|e| Error::Config(format!("{p:?}: {e}"))))
        .collect()
}
