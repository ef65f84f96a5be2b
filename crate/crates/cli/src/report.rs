//! Check records and their JSON / text emitters.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;

use crate::CliError;

/// One verified identity. `anchor` is the formula being checked.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub anchor: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Wall time; kept out of `report.json` so reports are reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        CheckReport {
            name: name.into(),
            anchor: anchor.into(),
            residual,
            tolerance,
            // NaN residuals never pass
            pass: residual <= tolerance,
            runtime: Duration::ZERO,
        }
    }

    /// Rescales the tolerance and recomputes the pass flag.
    pub fn with_tolerance_scale(mut self, scale: f64) -> Self {
        self.tolerance *= scale;
        self.pass = self.residual <= self.tolerance;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl Report {
    /// Sorts by check name so that output is independent of run order.
    pub fn new(command: impl Into<String>, seed: u64, mut checks: Vec<CheckReport>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            command: command.into(),
            seed,
            passed: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>12}  {:>9}  {:>6}  {:>9}  anchor",
            "check", "residual", "tolerance", "status", "time_ms"
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<width$}  {:>12.3e}  {:>9.1e}  {:>6}  {:>9.1}  {}",
                c.name,
                c.residual,
                c.tolerance,
                if c.pass { "PASS" } else { "FAIL" },
                c.runtime.as_secs_f64() * 1e3,
                c.anchor,
            );
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        out
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        write_file(&dir.join("report.json"), &self.to_json())?;
        write_file(&dir.join("checks.txt"), &self.to_table())
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_follows_tolerance() {
        assert!(CheckReport::new("a", "x", 1e-13, 1e-12).pass);
        assert!(!CheckReport::new("a", "x", f64::NAN, 1.0).pass);
        assert!(
            !CheckReport::new("a", "x", 1e-13, 1e-12)
                .with_tolerance_scale(0.0)
                .pass
        );
    }

    #[test]
    fn report_is_sorted_and_omits_runtime() {
        let mut b = CheckReport::new("b", "y", 0.0, 1.0);
        b.runtime = Duration::from_millis(5);
        let r = Report::new("verify", 1, vec![b, CheckReport::new("a", "x", 2.0, 1.0)]);
        assert_eq!(r.checks[0].name, "a");
        assert!(!r.passed);
        let json = r.to_json();
        assert!(!json.contains("runtime"));
        assert!(r.to_table().contains("FAIL"));
    }
}
