//! `evolve`: one initial datum pushed through the closed-form expansion and
//! the RK4 stepper side by side.

use std::fmt::Write as _;
use std::path::Path;

use majorana_core::algebra::{charge_conjugate, majorana_residual, real_to_majorana};
use majorana_core::axial::{gaussian_packet, helicity_basis};
use majorana_core::grid::{axial_analysis, BispinorField, BoxGrid, ComplexBispinorField};
use majorana_core::linalg::{max_abs_c, RealBispinor};
use majorana_core::solver::{
    amplitudes_from_field, energy_apply, majorana_mass_evolve, mode_synthesize, rk4_visit,
    scalar_product, ModeAmplitudes,
};
use majorana_core::Error;
use nalgebra::Vector3;
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{InitialConfig, RunConfig};
use crate::report::{ensure_dir, write_file};
use crate::CliError;

/// Relative amplitude below which a spectral branch counts as empty.
const POPULATED: f64 = 1e-12;
/// Fixed phase mixing the conjugation sectors in the split demo.
const SPLIT_PHASE: f64 = 0.7;

#[derive(Debug, Clone, Serialize)]
pub struct GridSummary {
    pub n: usize,
    pub l: f64,
    pub dims: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DriftSummary {
    pub max_l2_discrepancy: f64,
    pub max_norm_drift_closed_form: f64,
    pub max_norm_drift_rk4: f64,
    pub max_energy_drift_closed_form: f64,
    pub max_energy_drift_rk4: f64,
}

/// Spectral weight on `±q` in the closed-form field at `t_final`.
#[derive(Debug, Clone, Serialize)]
pub struct BranchWeights {
    pub label: [i64; 3],
    pub weight_q: f64,
    pub weight_minus_q: f64,
    pub both_populated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Pairing {
    pub both_branches_populated: bool,
    pub modes: Vec<BranchWeights>,
}

/// Conjugation sectors of `e^{iφ}ψ₀` after the Majorana mass evolution.
#[derive(Debug, Clone, Serialize)]
pub struct SplitSummary {
    pub phase: f64,
    pub parity_even_residual: f64,
    pub parity_odd_residual: f64,
    pub splitting_identity_residual: f64,
    pub norm_plus: f64,
    pub norm_minus: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub grid: GridSummary,
    pub mass: f64,
    pub majorana_mass: f64,
    pub seed: u64,
    pub dt_requested: f64,
    pub dt: f64,
    pub steps: usize,
    pub t_final: f64,
    pub e_max: f64,
    pub initial_norm: f64,
    pub initial_energy: f64,
    pub files: Vec<String>,
    pub drift: DriftSummary,
    pub pairing: Pairing,
    pub majorana_split: Option<SplitSummary>,
}

fn config_err(key: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{key}: {e}"))
}

fn initial_amplitudes(cfg: &RunConfig, grid: &BoxGrid) -> Result<ModeAmplitudes, CliError> {
    match &cfg.initial {
        InitialConfig::Modes { modes } => {
            let mut amps = ModeAmplitudes::zeros(grid);
            let half = (grid.n() / 2) as i64;
            for (k, spec) in modes.iter().enumerate() {
                let key = format!("initial.modes[{k}].label");
                let inside = spec.label.iter().enumerate().all(|(a, &l)| {
                    if a < grid.dims() {
                        l.abs() < half
                    } else {
                        l == 0
                    }
                });
                if !inside {
                    return Err(config_err(
                        &key,
                        format!("{:?} is outside the box or is a Nyquist mode", spec.label),
                    ));
                }
                let idx = grid.index_of_label(spec.label);
                if !grid.is_dynamic_mode(idx) {
                    return Err(config_err(&key, "the zero mode carries no helicity basis"));
                }
                for (a, x) in amps.values[idx].iter_mut().zip(spec.amplitudes) {
                    *a += x;
                }
            }
            Ok(amps)
        }
        InitialConfig::Gaussian {
            center,
            width,
            momentum,
            weights,
        } => {
            let k = Vector3::from(*momentum);
            let basis = helicity_basis(&k).map_err(|e| config_err("initial.momentum", e))?;
            let v: RealBispinor = basis
                .vectors()
                .iter()
                .zip(weights)
                .map(|(b, w)| b * *w)
                .sum();
            if !(v.norm() > 0.0) {
                return Err(config_err("initial.weights", "must not all vanish"));
            }
            let field = gaussian_packet(grid, &Vector3::from(*center), *width, &k, &v.normalize())
                .map_err(|e| config_err("initial", e))?;
            Ok(amplitudes_from_field(&field))
        }
    }
}

fn axis_names(dims: usize) -> &'static [&'static str] {
    &["x", "y", "z"][..dims]
}

fn push_rows(out: &mut String, solver: &str, field: &BispinorField) {
    let dims = field.grid.dims();
    for (i, v) in field.values.iter().enumerate() {
        let x = field.grid.position(i);
        let _ = write!(out, "{:.16e},{solver}", field.time);
        for a in 0..dims {
            let _ = write!(out, ",{:.16e}", x[a]);
        }
        for c in v.iter() {
            let _ = write!(out, ",{:.16e}", c);
        }
        out.push('\n');
    }
}

fn write_snapshot(
    dir: &Path,
    closed: &BispinorField,
    stepped: &BispinorField,
) -> Result<String, CliError> {
    let dims = closed.grid.dims();
    let mut s = format!(
        "t,solver,{},psi1,psi2,psi3,psi4\n",
        axis_names(dims).join(",")
    );
    push_rows(&mut s, "closed_form", closed);
    push_rows(&mut s, "rk4", stepped);
    let name = format!("snapshot_{:.6}.csv", closed.time);
    write_file(&dir.join(&name), &s)?;
    Ok(name)
}

fn energy(field: &BispinorField, m: f64) -> Result<f64, CliError> {
    Ok(scalar_product(field, &energy_apply(field, m))?)
}

fn pairing(
    cfg: &RunConfig,
    grid: &BoxGrid,
    amps: &ModeAmplitudes,
    at_final: &BispinorField,
) -> Pairing {
    let spec = axial_analysis(at_final);
    let scale = spec.values.iter().map(|u| u.norm()).fold(0.0, f64::max);
    let indices: Vec<usize> = match &cfg.initial {
        InitialConfig::Modes { modes } => {
            let mut v: Vec<_> = modes.iter().map(|s| grid.index_of_label(s.label)).collect();
            v.dedup();
            v
        }
        InitialConfig::Gaussian { .. } => {
            let weight = |i: usize| amps.values[i].iter().map(|x| x * x).sum::<f64>();
            (0..grid.len())
                .max_by(|&a, &b| weight(a).total_cmp(&weight(b)))
                .into_iter()
                .collect()
        }
    };
    let modes: Vec<_> = indices
        .into_iter()
        .map(|i| {
            let (wq, wm) = (spec.values[i].norm(), spec.values[grid.negated(i)].norm());
            BranchWeights {
                label: grid.mode_label(i),
                weight_q: wq,
                weight_minus_q: wm,
                both_populated: wq > POPULATED * scale && wm > POPULATED * scale,
            }
        })
        .collect();
    Pairing {
        both_branches_populated: !modes.is_empty() && modes.iter().all(|b| b.both_populated),
        modes,
    }
}

fn split_demo(cfg: &RunConfig, psi0: &BispinorField) -> Result<SplitSummary, CliError> {
    let phase = Complex64::from_polar(1.0, SPLIT_PHASE);
    let complex = ComplexBispinorField {
        grid: psi0.grid.clone(),
        values: psi0
            .values
            .iter()
            .map(|v| real_to_majorana(v) * phase)
            .collect(),
        time: 0.0,
    };
    let split = majorana_mass_evolve(&complex, cfg.mass, cfg.majorana_mass, cfg.time.t_final)?;
    let even = split
        .plus
        .values
        .iter()
        .map(majorana_residual)
        .fold(0.0, f64::max);
    let odd = split
        .minus
        .values
        .iter()
        .map(|v| max_abs_c(&(charge_conjugate(v) + v)))
        .fold(0.0, f64::max);
    let total = split.total();
    let np = split.plus.inner(&split.plus)?.re;
    let nm = split.minus.inner(&split.minus)?.re;
    let identity = (total.inner(&total)?.re - np - nm).abs();
    Ok(SplitSummary {
        phase: SPLIT_PHASE,
        parity_even_residual: even,
        parity_odd_residual: odd,
        splitting_identity_residual: identity,
        norm_plus: np,
        norm_minus: nm,
    })
}

pub fn run(cfg: &RunConfig) -> Result<Manifest, CliError> {
    cfg.validate()?;
    let grid = cfg.box_grid()?;
    let m = cfg.mass;
    let t_final = cfg.time.t_final;
    let steps = if t_final == 0.0 {
        0
    } else {
        ((t_final / cfg.time.dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize
    };
    let dt = if steps == 0 {
        cfg.time.dt
    } else {
        t_final / steps as f64
    };
    let amps = initial_amplitudes(cfg, &grid)?;
    let psi0 = mode_synthesize(&amps, m, 0.0);
    let (n0, e0) = (scalar_product(&psi0, &psi0)?, energy(&psi0, m)?);

    let dir = cfg.resolved_output_dir();
    ensure_dir(&dir)?;
    let mut files = Vec::new();
    let mut curves = String::from(
        "t,l2_discrepancy,norm_closed_form,norm_rk4,energy_closed_form,energy_rk4,norm_drift_rk4,energy_drift_rk4\n",
    );
    let mut drift = DriftSummary::default();
    let mut failure: Option<CliError> = None;
    let every = cfg.time.snapshot_every;
    let visited = rk4_visit(&psi0, m, dt, steps, |k, stepped| {
        if failure.is_some() {
            return;
        }
        let mut closed = mode_synthesize(&amps, m, k as f64 * dt);
        closed.time = k as f64 * dt;
        let mut stepped = stepped.clone();
        stepped.time = closed.time;
        let row = (|| -> Result<(), CliError> {
            let gap = closed.l2_distance(&stepped)?;
            let (nc, ns) = (
                scalar_product(&closed, &closed)?,
                scalar_product(&stepped, &stepped)?,
            );
            let (ec, es) = (energy(&closed, m)?, energy(&stepped, m)?);
            drift.max_l2_discrepancy = drift.max_l2_discrepancy.max(gap);
            drift.max_norm_drift_closed_form =
                drift.max_norm_drift_closed_form.max((nc - n0).abs());
            drift.max_norm_drift_rk4 = drift.max_norm_drift_rk4.max((ns - n0).abs());
            drift.max_energy_drift_closed_form =
                drift.max_energy_drift_closed_form.max((ec - e0).abs());
            drift.max_energy_drift_rk4 = drift.max_energy_drift_rk4.max((es - e0).abs());
            let _ = writeln!(
                curves,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                closed.time,
                gap,
                nc,
                ns,
                ec,
                es,
                ns - n0,
                es - e0
            );
            if k % every == 0 || k == steps {
                files.push(write_snapshot(&dir, &closed, &stepped)?);
            }
            Ok(())
        })();
        if let Err(e) = row {
            failure = Some(e);
        }
    });
    match visited {
        Err(e @ Error::Unstable { .. }) => return Err(config_err("time.dt", e)),
        other => other?,
    }
    if let Some(e) = failure {
        return Err(e);
    }
    write_file(&dir.join("curves.csv"), &curves)?;
    files.push("curves.csv".into());

    let at_final = mode_synthesize(&amps, m, t_final);
    let manifest = Manifest {
        grid: GridSummary {
            n: grid.n(),
            l: grid.l(),
            dims: grid.dims(),
        },
        mass: m,
        majorana_mass: cfg.majorana_mass,
        seed: cfg.seed,
        dt_requested: cfg.time.dt,
        dt,
        steps,
        t_final,
        e_max: grid.e_max(m),
        initial_norm: n0,
        initial_energy: e0,
        files,
        drift,
        pairing: pairing(cfg, &grid, &amps, &at_final),
        majorana_split: if cfg.majorana_mass != 0.0 {
            Some(split_demo(cfg, &psi0)?)
        } else {
            None
        },
    };
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    write_file(&dir.join("manifest.json"), &json)?;
    Ok(manifest)
}
