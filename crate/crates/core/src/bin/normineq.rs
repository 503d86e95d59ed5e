use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use normineq::harness::{
    curve_instance, parse_dim_range, parse_list, run_suites, search_counterexample, SuiteId, TrialConfig,
};
use normineq::inequalities::unit_grid;
use normineq::norms::NormSpec;

#[derive(Parser)]
#[command(name = "normineq", version, about = "Numerical checks of Cauchy-Schwarz type matrix norm inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveSuite {
    #[value(name = "convexity-f")]
    ConvexityF,
    #[value(name = "convexity-G")]
    ConvexityG,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites over seeded random instances.
    Verify {
        /// Comma-separated suite ids, or `all`.
        #[arg(long, default_value = "all")]
        suites: String,
        /// Dimension or inclusive range, e.g. `3` or `1..6`.
        #[arg(long, default_value = "1..6")]
        n: String,
        /// Comma-separated exponents r.
        #[arg(long, default_value = "0.5,1,2,3")]
        r: String,
        /// Comma-separated norms (trace, frobenius, spectral, schatten:p, kyfan:k).
        #[arg(long, default_value = "trace,frobenius,spectral,schatten:3,kyfan:2")]
        norms: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative slack tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Absolute numerical radius tolerance.
        #[arg(long, default_value_t = 1e-8)]
        omega_tol: f64,
        /// Absolute tolerance of one-dimensional integrals.
        #[arg(long, default_value_t = 1e-9)]
        quad_tol: f64,
        /// Absolute tolerance of two-dimensional integrals.
        #[arg(long, default_value_t = 1e-8)]
        quad_tol_2d: f64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Hill-climb towards the smallest slack of one suite.
    Search {
        #[arg(long)]
        suite: String,
        /// Number of verdict evaluations.
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1..6")]
        n: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample f(t) or G(s, t) of one random instance as CSV.
    Curve {
        #[arg(long, value_enum)]
        suite: CurveSuite,
        /// Points per axis.
        #[arg(long, default_value_t = 21)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value = "trace")]
        norm: NormSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn sink(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Verify { suites, n, r, norms, trials, seed, tol, omega_tol, quad_tol, quad_tol_2d, out, format } => {
            let (n_min, n_max) = parse_dim_range(&n)?;
            let config = TrialConfig {
                suites: SuiteId::parse_list(&suites)?,
                n_min,
                n_max,
                r_values: parse_list(&r)?,
                norms: parse_list(&norms)?,
                trials,
                master_seed: seed,
                tol_rel: tol,
                omega_tol,
                quad_tol,
                quad_tol_2d,
                ..TrialConfig::default()
            };
            let report = run_suites(&config)?;
            let mut w = sink(&out)?;
            match format {
                Format::Json => writeln!(w, "{}", report.to_json())?,
                Format::Csv => report.write_csv(&mut w)?,
            }
            w.flush()?;
            for s in &report.suites {
                eprintln!(
                    "{:<18} {:>6}/{:<6} passed  min slack {:+.3e}",
                    s.id.as_str(),
                    s.passes,
                    s.evaluations,
                    s.min_slack.unwrap_or(f64::NAN)
                );
            }
            Ok(report.all_passed())
        }
        Command::Search { suite, budget, seed, n, out } => {
            let (n_min, n_max) = parse_dim_range(&n)?;
            let suite: SuiteId = suite.parse()?;
            let config = TrialConfig { n_min, n_max, master_seed: seed, ..TrialConfig::default() };
            let result = search_counterexample(suite, &config, budget, seed)?;
            let mut w = sink(&out)?;
            writeln!(w, "{}", serde_json::to_string_pretty(&result)?)?;
            w.flush()?;
            eprintln!("{suite}: smallest relative slack {:+.3e} after {} evaluations", result.best.min_slack, result.evaluations);
            Ok(result.best.verdict.pass)
        }
        Command::Curve { suite, grid, seed, n, r, norm, out } => {
            let inst = curve_instance(seed, n, r, norm)?;
            let mut w = csv::Writer::from_writer(sink(&out)?);
            match suite {
                CurveSuite::ConvexityF => {
                    w.write_record(["t", "f"])?;
                    for (t, f) in inst.curve(grid)?.samples {
                        w.write_record([t.to_string(), f.to_string()])?;
                    }
                }
                CurveSuite::ConvexityG => {
                    let nodes = unit_grid(grid)?;
                    w.write_record(["s", "t", "G"])?;
                    for &s in &nodes {
                        for &t in &nodes {
                            w.write_record([s.to_string(), t.to_string(), inst.surface_value(s, t)?.to_string()])?;
                        }
                    }
                }
            }
            w.flush()?;
            Ok(true)
        }
    }
}
