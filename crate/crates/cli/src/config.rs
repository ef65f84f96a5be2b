//! Run configuration: a TOML file with `[grid]`, `[time]` and `[initial]`
//! sections, overridden key by key from the command line.

use std::path::{Path, PathBuf};

use majorana_core::grid::BoxGrid;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable naming the default output directory.
pub const OUTPUT_ENV: &str = "MAJORANA_OUT";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub n: usize,
    pub l: f64,
    pub dims: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            n: 32,
            l: 20.0,
            dims: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimeConfig {
    pub dt: f64,
    pub t_final: f64,
    /// Steps between snapshots; the final time is always written.
    pub snapshot_every: usize,
}

impl Default for TimeConfig {
    fn default() -> Self {
        TimeConfig {
            dt: 0.002,
            t_final: 2.0,
            snapshot_every: 250,
        }
    }
}

/// One populated lattice mode: integer label (`p = 2πn/L`) and
/// `(c₁, c₂, d₁, d₂)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub label: [i64; 3],
    pub amplitudes: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InitialConfig {
    Modes {
        modes: Vec<ModeSpec>,
    },
    /// Envelope `exp(−|x − c|²/4σ²)` times `e^{iγ₅k·x}v`, with `v` the
    /// helicity-basis combination `weights` at `k`.
    Gaussian {
        center: [f64; 3],
        width: f64,
        momentum: [f64; 3],
        weights: [f64; 4],
    },
}

impl Default for InitialConfig {
    fn default() -> Self {
        InitialConfig::Modes {
            modes: vec![ModeSpec {
                label: [2, 0, 0],
                amplitudes: [1.0, 0.0, 0.0, 0.0],
            }],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub mass: f64,
    pub majorana_mass: f64,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    pub grid: GridConfig,
    pub time: TimeConfig,
    pub initial: InitialConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mass: 1.0,
            majorana_mass: 0.0,
            seed: 7,
            output_dir: None,
            grid: GridConfig::default(),
            time: TimeConfig::default(),
            initial: InitialConfig::default(),
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mass: Option<f64>,
    pub majorana_mass: Option<f64>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub n: Option<usize>,
    pub l: Option<f64>,
    pub dims: Option<usize>,
    pub dt: Option<f64>,
    pub t_final: Option<f64>,
}

impl RunConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("{origin}: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! set {
            ($src:expr, $dst:expr) => {
                if let Some(v) = $src.clone() {
                    $dst = v;
                }
            };
        }
        set!(o.mass, self.mass);
        set!(o.majorana_mass, self.majorana_mass);
        set!(o.seed, self.seed);
        set!(o.n, self.grid.n);
        set!(o.l, self.grid.l);
        set!(o.dims, self.grid.dims);
        set!(o.dt, self.time.dt);
        set!(o.t_final, self.time.t_final);
        if o.output_dir.is_some() {
            self.output_dir = o.output_dir.clone();
        }
    }

    /// Flag, then file, then `$MAJORANA_OUT`, then `./out`.
    pub fn resolved_output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .or_else(|| std::env::var_os(OUTPUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"))
    }

    pub fn box_grid(&self) -> Result<BoxGrid, CliError> {
        BoxGrid::new(self.grid.n, self.grid.l, self.grid.dims)
            .map_err(|e| CliError::Config(format!("grid: {e}")))
    }

    /// Checks beyond what the grid constructor enforces.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |key: &str, why: &str| Err(CliError::Config(format!("{key}: {why}")));
        if !(self.mass >= 0.0) {
            return bad("mass", "must be non-negative");
        }
        if !self.majorana_mass.is_finite() {
            return bad("majorana_mass", "must be finite");
        }
        self.box_grid()?;
        if !(self.time.dt > 0.0) {
            return bad("time.dt", "must be positive");
        }
        if !(self.time.t_final >= 0.0) {
            return bad("time.t_final", "must be non-negative");
        }
        if self.time.snapshot_every == 0 {
            return bad("time.snapshot_every", "must be at least 1");
        }
        match &self.initial {
            InitialConfig::Modes { modes } if modes.is_empty() => {
                bad("initial.modes", "at least one mode required")
            }
            InitialConfig::Gaussian { width, .. } if !(*width > 0.0) => {
                bad("initial.width", "must be positive")
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_toml() {
        let cfg = RunConfig::default();
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::parse(&text, "inline").unwrap(), cfg);
    }

    #[test]
    fn sections_and_overrides() {
        let text = r#"
mass = 0.5
[grid]
n = 16
[initial]
kind = "gaussian"
center = [10.0, 0.0, 0.0]
width = 1.5
momentum = [1.0, 0.0, 0.0]
weights = [1.0, 0.0, 0.0, 0.0]
"#;
        let mut cfg = RunConfig::parse(text, "inline").unwrap();
        assert_eq!(cfg.grid.n, 16);
        assert_eq!(cfg.grid.l, 20.0);
        cfg.apply(&Overrides {
            mass: Some(2.0),
            n: Some(8),
            ..Default::default()
        });
        assert_eq!((cfg.mass, cfg.grid.n), (2.0, 8));
        cfg.validate().unwrap();
    }

    #[test]
    fn errors_name_the_key() {
        let err = RunConfig::parse("[grid]\nsize = 3\n", "f.toml")
            .unwrap_err()
            .to_string();
        assert!(err.contains("size") && err.contains("line 2"), "{err}");
        let mut cfg = RunConfig::default();
        cfg.time.dt = -1.0;
        assert!(cfg.validate().unwrap_err().to_string().contains("time.dt"));
        cfg = RunConfig::default();
        cfg.grid.n = 12;
        assert!(cfg.validate().unwrap_err().to_string().contains("grid"));
    }
}
