//! Random-restart hill climbing on the smallest relative slack.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::config::{SuiteId, TrialConfig};
use super::generate::Factors;
use super::suites::{evaluate, grid_points, GridPoint, TrialSetup};
use crate::error::{Error, Result};
use crate::inequalities::InequalityVerdict;
use crate::random::derived_rng;

const STEPS_PER_RESTART: usize = 25;
const INITIAL_STEP: f64 = 0.25;
const REJECTIONS_PER_HALVING: usize = 4;

/// A persisted instance: the raw draws plus everything needed to rebuild and
/// re-check it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub suite: SuiteId,
    pub setup: TrialSetup,
    pub params: GridPoint,
    pub factors: Factors,
    pub min_slack: f64,
    pub verdict: InequalityVerdict,
}

impl SearchRecord {
    /// Rebuilds the instance and runs the check again.
    pub fn reevaluate(&self, config: &TrialConfig) -> Result<InequalityVerdict> {
        Ok(evaluate(self.suite, &self.factors, &self.setup, &self.params, &config.options(), config.pd_floor)?.verdict)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub suite: SuiteId,
    pub seed: u64,
    pub budget: usize,
    pub evaluations: usize,
    pub restarts: usize,
    /// Instance with the smallest relative slack seen.
    pub best: SearchRecord,
}

/// Minimizes the smallest relative slack of `suite` over perturbations of
/// random instances. `budget` counts verdict evaluations. Instances come
/// from `derived_rng(seed, "search/<suite>", restart)`; dimensions,
/// exponents and norms follow the trial schedule of `config`.
pub fn search_counterexample(suite: SuiteId, config: &TrialConfig, budget: usize, seed: u64) -> Result<SearchResult> {
    let config = TrialConfig { suites: vec![suite], ..config.clone() };
    config.validate()?;
    if budget == 0 {
        return Err(Error::Config("search budget must be at least 1".into()));
    }
    let points = grid_points(suite, &config.grid);
    let opts = config.options();
    let label = format!("search/{suite}");

    let mut best: Option<SearchRecord> = None;
    let mut used = 0;
    let mut restart = 0;
    while used < budget {
        let mut rng = derived_rng(seed, &label, restart as u64);
        let setup = TrialSetup::for_trial(&config, restart as u64);
        let params = points[rng.random_range(0..points.len())].clone();
        let mut current = Factors::draw(&mut rng, setup.n);
        let score = |f: &Factors| -> Option<InequalityVerdict> {
            evaluate(suite, f, &setup, &params, &opts, config.pd_floor).ok().map(|o| o.verdict)
        };
        let mut current_verdict = score(&current);
        used += 1;
        let mut step = INITIAL_STEP;
        let mut rejections = 0;
        let mut steps = 0;
        while steps + 1 < STEPS_PER_RESTART && used < budget {
            let candidate = current.perturb(&mut rng, step);
            let verdict = score(&candidate);
            used += 1;
            steps += 1;
            let better = match (&verdict, &current_verdict) {
                (Some(v), Some(c)) => v.min_relative_slack() < c.min_relative_slack(),
                (Some(_), None) => true,
                _ => false,
            };
            if better {
                current = candidate;
                current_verdict = verdict;
            } else {
                rejections += 1;
                if rejections % REJECTIONS_PER_HALVING == 0 {
                    step *= 0.5;
                }
            }
        }
        if let Some(v) = current_verdict {
            let slack = v.min_relative_slack();
            if best.as_ref().is_none_or(|b| slack < b.min_slack) {
                best = Some(SearchRecord {
                    suite,
                    setup,
                    params: params.clone(),
                    factors: current,
                    min_slack: slack,
                    verdict: v,
                });
            }
        }
        restart += 1;
    }
    let best = best.ok_or_else(|| Error::Config(format!("no instance of {suite} could be evaluated")))?;
    Ok(SearchResult { suite, seed, budget, evaluations: used, restarts: restart, best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_cs_basic_is_tight() {
        let config = TrialConfig { n_min: 1, n_max: 1, ..TrialConfig::default() };
        let r = search_counterexample(SuiteId::CsBasic, &config, 60, 5).unwrap();
        assert_eq!(r.evaluations, 60);
        assert!(r.best.min_slack.abs() < 1e-12);
    }

    #[test]
    fn centre_only_grid_has_zero_first_slack() {
        let mut config = TrialConfig { n_min: 3, n_max: 3, ..TrialConfig::default() };
        config.grid.mu = vec![0.5];
        let r = search_counterexample(SuiteId::CsBasic, &config, 30, 1).unwrap();
        assert_eq!(r.best.min_slack, 0.0);
    }

    #[test]
    fn persisted_record_reproduces_its_verdict() {
        let config = TrialConfig { n_min: 2, n_max: 3, ..TrialConfig::default() };
        let r = search_counterexample(SuiteId::Thm43, &config, 20, 9).unwrap();
        assert!(r.best.min_slack >= -1e-7);
        let json = serde_json::to_string(&r).unwrap();
        let back: SearchResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back.best.reevaluate(&config).unwrap(), r.best.verdict);
    }
}
