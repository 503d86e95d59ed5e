//! Seeded instance generation, suite runs, counterexample search and
//! reports.

mod config;
mod generate;
mod run;
mod search;
mod suites;

pub use config::{parse_dim_range, parse_list, ParamGrid, SuiteId, TrialConfig};
pub use generate::{gen_general, gen_pd, gen_psd, Factors, DEFAULT_PD_FLOOR};
pub use run::{run_suites, RunReport, SuiteReport, Timing, TrialRecord};
pub use search::{search_counterexample, SearchRecord, SearchResult};
pub use suites::{evaluate, grid_points, replay, GridPoint, Outcome, TrialKey, TrialSetup};

use crate::error::Result;
use crate::inequalities::HeinzInstance;
use crate::norms::NormSpec;
use crate::random::derived_rng;

/// The Heinz instance sampled by the `curve` command.
pub fn curve_instance(seed: u64, n: usize, r: f64, spec: NormSpec) -> Result<HeinzInstance> {
    let f = Factors::draw(&mut derived_rng(seed, "curve", 0), n);
    HeinzInstance::new(
        &generate::psd_from_factor(&f.a),
        &generate::psd_from_factor(&f.b),
        &generate::general_from_factor(&f.x),
        r,
        spec,
    )
}
