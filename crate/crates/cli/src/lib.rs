//! Front end for `majorana-core`: invariant suites with residual reports,
//! two-solver evolution runs with CSV/JSON artifacts, and the Poincaré
//! representation checks.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};

pub mod config;
pub mod evolve;
pub mod report;
pub mod suites;

pub use config::{Overrides, RunConfig};
pub use report::{CheckReport, Report};
pub use suites::{RepCase, Suite, SuiteParams};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] majorana_core::Error),
}

impl CliError {
    /// Process exit status: 2 for bad input, 1 for anything that went wrong
    /// after the input was accepted.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

/// Runs `suite`, scales every tolerance by `tolerance_scale` and writes the
/// report to `out`.
pub fn cmd_verify(
    suite: Suite,
    params: &SuiteParams,
    tolerance_scale: f64,
    out: &Path,
) -> Result<Report, CliError> {
    if !(tolerance_scale >= 0.0) {
        return Err(CliError::Usage(format!(
            "tolerance scale must be non-negative, got {tolerance_scale}"
        )));
    }
    let checks = suites::run_suite(suite, params)?
        .into_iter()
        .map(|c| c.with_tolerance_scale(tolerance_scale))
        .collect();
    let report = Report::new(format!("verify {}", suite.name()), params.seed, checks);
    report::ensure_dir(out)?;
    report.write(out)?;
    Ok(report)
}

pub fn cmd_rep(case: RepCase, params: &SuiteParams, out: &Path) -> Result<Report, CliError> {
    let report = Report::new(
        format!("rep {}", case.name()),
        params.seed,
        suites::run_rep(case, params),
    );
    report::ensure_dir(out)?;
    report.write(out)?;
    Ok(report)
}

pub fn cmd_evolve(cfg: &RunConfig) -> Result<evolve::Manifest, CliError> {
    evolve::run(cfg)
}

/// `--out`, else `$MAJORANA_OUT`, else `./out`.
pub fn output_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(config::OUTPUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}
