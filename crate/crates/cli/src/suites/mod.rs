//! Seeded invariant suites. Each check is named `<suite>.<group>.<case>`.

use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::CheckReport;
use crate::CliError;

mod algebra;
mod axial;
mod poincare;
mod solver;

pub use poincare::RepCase;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Axial,
    Solver,
    Poincare,
    All,
}

impl FromStr for Suite {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "algebra" => Ok(Suite::Algebra),
            "axial" => Ok(Suite::Axial),
            "solver" => Ok(Suite::Solver),
            "poincare" => Ok(Suite::Poincare),
            "all" => Ok(Suite::All),
            other => Err(CliError::Usage(format!(
                "unknown suite '{other}' (expected algebra, axial, solver, poincare or all)"
            ))),
        }
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Axial => "axial",
            Suite::Solver => "solver",
            Suite::Poincare => "poincare",
            Suite::All => "all",
        }
    }
}

/// Parameters shared by every suite.
#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    pub seed: u64,
    /// Base mass for the dynamics checks.
    pub mass: f64,
}

/// Independent stream per check so adding a check never shifts another's data.
pub(crate) fn rng_for(params: &SuiteParams, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(params.seed);
    r.set_stream(stream);
    r
}

pub(crate) fn timed(
    name: &str,
    anchor: &str,
    tolerance: f64,
    f: impl FnOnce() -> f64,
) -> CheckReport {
    let start = Instant::now();
    let residual = f();
    let mut c = CheckReport::new(name, anchor, residual, tolerance);
    c.runtime = start.elapsed();
    c
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<Vec<CheckReport>, CliError> {
    Ok(match suite {
        Suite::Algebra => algebra::run(params),
        Suite::Axial => axial::run(params),
        Suite::Solver => solver::run(params)?,
        Suite::Poincare => poincare::run(RepCase::Both, params),
        Suite::All => {
            let mut all = algebra::run(params);
            all.extend(axial::run(params));
            all.extend(solver::run(params)?);
            all.extend(poincare::run(RepCase::Both, params));
            all
        }
    })
}

pub fn run_rep(case: RepCase, params: &SuiteParams) -> Vec<CheckReport> {
    poincare::run(case, params)
}

pub(crate) fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a broken computation cannot pass
    it.into_iter().fold(0.0, |a: f64, b| {
        if a.is_nan() || b.is_nan() {
            f64::NAN
        } else {
            a.max(b)
        }
    })
}
