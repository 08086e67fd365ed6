//! Scenario runner for `sp4_core`: reads a JSON scenario, runs the matching
//! verification pipeline and writes a JSON report plus CSV plot data.

pub mod config;
pub mod error;
pub mod output;
mod pipelines;

use std::path::{Path, PathBuf};
use std::time::Instant;

pub use config::{describe, Mode, ScenarioConfig};
pub use error::{CliError, Result};
pub use output::{emit_plot_data, read_plot_data, Check, Diagnostic, Report, Status, Table};

/// Environment variable that fixes the seed of every randomized sample.
pub const SEED_ENV: &str = "SP4_SEED";
pub const DEFAULT_SEED: u64 = 20_240_704;
pub const REPORT_FILE: &str = "report.json";

/// Exit status when the run completed but a check failed.
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Takes precedence over the config's `output_dir`.
    pub out_dir: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            out_dir: None,
            seed: DEFAULT_SEED,
        }
    }
}

/// Seed from `SP4_SEED`, or the default when unset.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|e| CliError::ConfigInvalid(format!("{SEED_ENV}={s:?}: {e}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

pub fn output_dir(config: &ScenarioConfig, opts: &RunOptions) -> PathBuf {
    opts.out_dir
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Runs the scenario, writes its artifacts and `report.json`, and returns the
/// report.
pub fn run(config: &ScenarioConfig, opts: &RunOptions) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let out_dir = output_dir(config, opts);
    std::fs::create_dir_all(&out_dir).map_err(|e| CliError::io(&out_dir, e))?;
    let ctx = pipelines::Context {
        out_dir: &out_dir,
        seed: opts.seed,
        hbar: config.hbar,
        grid: config.grid.build()?,
        grid_cfg: config.grid,
        tolerances: config.tolerances,
    };
    let mut outcome = pipelines::run_mode(&config.params, &ctx)?;
    outcome.artifacts.sort();
    let passed = outcome.checks.iter().all(Check::passed);
    let report = Report {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        scenario: config.to_value(),
        seed: opts.seed,
        passed,
        checks: outcome.checks,
        diagnostics: outcome.diagnostics,
        artifacts: outcome.artifacts,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    report.write(&out_dir.join(REPORT_FILE))?;
    Ok(report)
}

/// Loads `path` and runs it.
pub fn run_file(path: &Path, opts: &RunOptions) -> Result<Report> {
    run(&ScenarioConfig::load(path)?, opts)
}

/// 0 when every check passed, otherwise [`EXIT_CHECK_FAILED`].
pub fn exit_code(report: &Report) -> i32 {
    if report.passed {
        0
    } else {
        EXIT_CHECK_FAILED
    }
}
