//! Per-suite instance construction, parameter grids and seed-path
//! fingerprints.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::{ParamGrid, SuiteId, TrialConfig};
use super::generate::{general_from_factor, pd_from_factor, psd_from_factor, Factors};
use crate::error::{Error, Result};
use crate::inequalities::{
    check_bhatia_davis, check_convexity_f, check_convexity_g, check_cor44, check_example45, check_jensen_phi,
    check_kwong_psd, check_thm32, check_thm33, check_thm43, distinct_points, thm32_printed_form_holds, CheckOptions,
    HeinzInstance, InequalityVerdict,
};
use crate::linalg::ScalarFn;
use crate::norms::NormSpec;
use crate::random::derived_rng;

/// Dimension, exponent and norm of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialSetup {
    pub n: usize,
    pub r: f64,
    pub norm: NormSpec,
}

impl TrialSetup {
    /// Mixed-radix walk over dimensions, exponents and norms, so that
    /// consecutive trials cycle through every combination. Norms that need
    /// a larger dimension than `n` are skipped; a validated config always
    /// leaves at least one.
    pub fn for_trial(config: &TrialConfig, trial: u64) -> Self {
        let dims: Vec<usize> = config.dimensions().collect();
        let mut k = trial as usize;
        let n = dims[k % dims.len()];
        k /= dims.len();
        let r = config.r_values[k % config.r_values.len()];
        k /= config.r_values.len();
        let usable: Vec<NormSpec> = config.norms.iter().copied().filter(|s| s.min_dimension() <= n).collect();
        let norm = usable[k % usable.len()];
        Self { n, r, norm }
    }
}

/// One grid point; only the fields a suite uses are set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<ScalarFn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<ScalarFn>,
}

impl GridPoint {
    fn entries(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        for (k, v) in [
            ("mu", self.mu),
            ("s", self.s),
            ("t", self.t),
            ("p", self.p),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ] {
            if let Some(v) = v {
                out.push((k, v.to_string()));
            }
        }
        for (k, v) in [("f", &self.f), ("g", &self.g)] {
            if let Some(v) = v {
                out.push((k, v.to_string()));
            }
        }
        out
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || value.parse::<f64>().map_err(|_| Error::Config(format!("bad number {value:?} for {key}")));
        match key {
            "mu" => self.mu = Some(num()?),
            "s" => self.s = Some(num()?),
            "t" => self.t = Some(num()?),
            "p" => self.p = Some(num()?),
            "alpha" => self.alpha = Some(num()?),
            "beta" => self.beta = Some(num()?),
            "f" => self.f = Some(value.parse()?),
            "g" => self.g = Some(value.parse()?),
            _ => return Err(Error::Config(format!("unknown parameter {key:?}"))),
        }
        Ok(())
    }

    /// Compact `key=value;...` form.
    pub fn describe(&self) -> String {
        self.entries().into_iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }

    fn need(v: Option<f64>, name: &str) -> Result<f64> {
        v.ok_or_else(|| Error::Config(format!("grid point lacks {name}")))
    }
}

/// Grid points evaluated for every trial of `suite`.
pub fn grid_points(suite: SuiteId, grid: &ParamGrid) -> Vec<GridPoint> {
    let none = GridPoint::default();
    match suite {
        SuiteId::CsBasic | SuiteId::HhChain => {
            grid.mu.iter().map(|&mu| GridPoint { mu: Some(mu), ..none.clone() }).collect()
        }
        SuiteId::CornerMax => grid
            .s
            .iter()
            .flat_map(|&s| grid.t.iter().map(move |&t| GridPoint { s: Some(s), t: Some(t), ..GridPoint::default() }))
            .collect(),
        SuiteId::Dragomir2d => grid
            .dragomir
            .iter()
            .map(|&(a, b)| GridPoint { alpha: Some(a), beta: Some(b), ..none.clone() })
            .collect(),
        SuiteId::Dragomir2dCor26 => vec![GridPoint { alpha: Some(1.0), beta: Some(1.0), ..none }],
        SuiteId::Thm32 | SuiteId::Thm33 => grid
            .mu
            .iter()
            .flat_map(|&mu| grid.p.iter().map(move |&p| GridPoint { mu: Some(mu), p: Some(p), ..GridPoint::default() }))
            .collect(),
        SuiteId::JensenPhi => grid.p.iter().map(|&p| GridPoint { p: Some(p), ..none.clone() }).collect(),
        SuiteId::BhatiaDavis | SuiteId::ConvexityF | SuiteId::ConvexityG | SuiteId::Example45 => vec![none],
        SuiteId::KwongPsd => {
            let mut fs = vec![ScalarFn::Sqrt, ScalarFn::Log1p];
            fs.extend(grid.alpha.iter().filter(|&&a| a > 0.0 && a < 1.0).map(|&a| ScalarFn::Pow(a)));
            fs.into_iter().map(|f| GridPoint { f: Some(f), ..GridPoint::default() }).collect()
        }
        SuiteId::Thm43 => {
            let mut pts: Vec<GridPoint> = grid
                .alpha
                .iter()
                .map(|&a| GridPoint {
                    f: Some(ScalarFn::Pow(a)),
                    g: Some(ScalarFn::Pow(1.0 - a)),
                    ..GridPoint::default()
                })
                .collect();
            pts.push(GridPoint { f: Some(ScalarFn::Log1p), g: Some(ScalarFn::TOverLog1p), ..none });
            pts
        }
        SuiteId::Cor44 => grid.alpha.iter().map(|&a| GridPoint { alpha: Some(a), ..none.clone() }).collect(),
    }
}

/// A verdict plus suite-specific side information.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub verdict: InequalityVerdict,
    /// For `thm32`: whether the chain also holds with the unreduced `μ`.
    pub printed_form_holds: Option<bool>,
}

/// Builds the instance for `suite` from raw draws and evaluates one grid
/// point.
pub fn evaluate(
    suite: SuiteId,
    factors: &Factors,
    setup: &TrialSetup,
    point: &GridPoint,
    opts: &CheckOptions,
    pd_floor: f64,
) -> Result<Outcome> {
    let plain = |verdict| Ok(Outcome { verdict, printed_form_holds: None });
    let heinz = || {
        HeinzInstance::new(
            &psd_from_factor(&factors.a),
            &psd_from_factor(&factors.b),
            &general_from_factor(&factors.x),
            setup.r,
            setup.norm,
        )
    };
    let pd = || pd_from_factor(&factors.a, pd_floor);
    let x = || general_from_factor(&factors.x);
    match suite {
        SuiteId::CsBasic => plain(heinz()?.check_cs_basic(GridPoint::need(point.mu, "mu")?, opts)?),
        SuiteId::HhChain => plain(heinz()?.check_hh_chain(GridPoint::need(point.mu, "mu")?, opts)?),
        SuiteId::CornerMax => plain(heinz()?.check_corner_max(
            GridPoint::need(point.s, "s")?,
            GridPoint::need(point.t, "t")?,
            opts,
        )?),
        SuiteId::Dragomir2d | SuiteId::Dragomir2dCor26 => plain(heinz()?.check_dragomir_2d(
            GridPoint::need(point.alpha, "alpha")?,
            GridPoint::need(point.beta, "beta")?,
            opts,
        )?),
        SuiteId::Thm32 => {
            let inst = heinz()?;
            let (mu, p) = (GridPoint::need(point.mu, "mu")?, GridPoint::need(point.p, "p")?);
            Ok(Outcome {
                verdict: check_thm32(&inst, mu, p, opts)?,
                printed_form_holds: Some(thm32_printed_form_holds(&inst, mu, p, opts)?),
            })
        }
        SuiteId::Thm33 => plain(check_thm33(
            &heinz()?,
            GridPoint::need(point.mu, "mu")?,
            GridPoint::need(point.p, "p")?,
            opts,
        )?),
        SuiteId::ConvexityF => plain(check_convexity_f(&heinz()?, opts)?),
        SuiteId::ConvexityG => plain(check_convexity_g(&heinz()?, opts)?),
        SuiteId::JensenPhi => plain(check_jensen_phi(&heinz()?, GridPoint::need(point.p, "p")?, opts)?),
        SuiteId::BhatiaDavis => plain(check_bhatia_davis(
            &general_from_factor(&factors.a),
            &general_from_factor(&factors.b),
            &x(),
            setup.r,
            setup.norm,
            opts,
        )?),
        SuiteId::KwongPsd => {
            let points: Vec<f64> = distinct_points(&factors.log_points.iter().map(|l| l.exp()).collect::<Vec<_>>());
            let f = point.f.as_ref().ok_or_else(|| Error::Config("grid point lacks f".into()))?;
            plain(check_kwong_psd(&points, f, opts.tol_rel)?)
        }
        SuiteId::Thm43 => {
            let f = point.f.as_ref().ok_or_else(|| Error::Config("grid point lacks f".into()))?;
            let g = point.g.as_ref().ok_or_else(|| Error::Config("grid point lacks g".into()))?;
            plain(check_thm43(&pd(), &x(), f, g, opts)?)
        }
        SuiteId::Cor44 => plain(check_cor44(&pd(), &x(), GridPoint::need(point.alpha, "alpha")?, opts)?),
        SuiteId::Example45 => plain(check_example45(&pd(), &x(), opts)?),
    }
}

/// Seed path of one evaluation: enough to regenerate the instance and
/// re-run the check without storing any matrix.
///
/// Text form: `suite/seed=S/trial=K/n=N/r=R/norm=SPEC[/key=value...]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialKey {
    pub suite: SuiteId,
    pub seed: u64,
    pub trial: u64,
    pub setup: TrialSetup,
    pub point: GridPoint,
}

impl TrialKey {
    pub fn factors(&self) -> Factors {
        Factors::draw(&mut derived_rng(self.seed, self.suite.as_str(), self.trial), self.setup.n)
    }

    pub fn evaluate(&self, opts: &CheckOptions, pd_floor: f64) -> Result<Outcome> {
        evaluate(self.suite, &self.factors(), &self.setup, &self.point, opts, pd_floor)
    }
}

impl fmt::Display for TrialKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/seed={}/trial={}/n={}/r={}/norm={}",
            self.suite, self.seed, self.trial, self.setup.n, self.setup.r, self.setup.norm
        )?;
        for (k, v) in self.point.entries() {
            write!(f, "/{k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for TrialKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('/');
        let suite: SuiteId = parts.next().unwrap_or_default().parse()?;
        let (mut seed, mut trial, mut n, mut r, mut norm) = (None, None, None, None, None);
        let mut point = GridPoint::default();
        for part in parts {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Config(format!("bad fingerprint field {part:?}")))?;
            let bad = || Error::Config(format!("bad value {v:?} for {k}"));
            match k {
                "seed" => seed = Some(v.parse().map_err(|_| bad())?),
                "trial" => trial = Some(v.parse().map_err(|_| bad())?),
                "n" => n = Some(v.parse().map_err(|_| bad())?),
                "r" => r = Some(v.parse().map_err(|_| bad())?),
                "norm" => norm = Some(v.parse()?),
                _ => point.set(k, v)?,
            }
        }
        let missing = |name: &str| Error::Config(format!("fingerprint lacks {name}"));
        Ok(Self {
            suite,
            seed: seed.ok_or_else(|| missing("seed"))?,
            trial: trial.ok_or_else(|| missing("trial"))?,
            setup: TrialSetup {
                n: n.ok_or_else(|| missing("n"))?,
                r: r.ok_or_else(|| missing("r"))?,
                norm: norm.ok_or_else(|| missing("norm"))?,
            },
            point,
        })
    }
}

/// Regenerates and re-evaluates the instance named by a fingerprint.
pub fn replay(fingerprint: &str, config: &TrialConfig) -> Result<Outcome> {
    fingerprint.parse::<TrialKey>()?.evaluate(&config.options(), config.pd_floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_setup_cycles_through_combinations() {
        let config = TrialConfig::default();
        let setups: Vec<TrialSetup> = (0..120).map(|k| TrialSetup::for_trial(&config, k)).collect();
        assert_eq!(setups[0].n, 1);
        assert_eq!(setups[5].n, 6);
        assert_eq!(setups[6].r, 1.0);
        for s in &setups {
            assert!(s.norm.min_dimension() <= s.n);
        }
        for n in 2..=6 {
            for norm in &config.norms {
                assert!(setups.iter().any(|s| s.n == n && s.norm == *norm));
            }
        }
    }

    #[test]
    fn grid_sizes() {
        let g = ParamGrid::default();
        assert_eq!(grid_points(SuiteId::CsBasic, &g).len(), 11);
        assert_eq!(grid_points(SuiteId::CornerMax, &g).len(), 121);
        assert_eq!(grid_points(SuiteId::Thm32, &g).len(), 55);
        assert_eq!(grid_points(SuiteId::Thm43, &g).len(), 11);
        assert_eq!(grid_points(SuiteId::KwongPsd, &g).len(), 2 + 8);
        assert_eq!(grid_points(SuiteId::BhatiaDavis, &g).len(), 1);
    }

    #[test]
    fn fingerprints_round_trip_and_replay() {
        let config = TrialConfig::default();
        let key = TrialKey {
            suite: SuiteId::Thm43,
            seed: 17,
            trial: 3,
            setup: TrialSetup::for_trial(&config, 3),
            point: GridPoint { f: Some(ScalarFn::Pow(0.3)), g: Some(ScalarFn::Pow(0.7)), ..GridPoint::default() },
        };
        let text = key.to_string();
        assert_eq!(text.parse::<TrialKey>().unwrap(), key);
        let a = replay(&text, &config).unwrap().verdict;
        let b = key.evaluate(&config.options(), config.pd_floor).unwrap().verdict;
        assert_eq!(a, b);
        assert!(a.pass);
        assert!("cs-basic/seed=1".parse::<TrialKey>().is_err());
    }
}
