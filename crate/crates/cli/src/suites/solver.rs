use majorana_core::algebra::charge_conjugate;
use majorana_core::grid::{BispinorField, BoxGrid, ComplexBispinorField};
use majorana_core::linalg::{max_abs_c, ComplexBispinor, Momentum3};
use majorana_core::solver::*;
use nalgebra::Vector3;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{max_of, rng_for, timed, SuiteParams};
use crate::report::CheckReport;
use crate::CliError;

/// Uniform amplitudes on every dynamic mode, scaled to a unit-norm field.
pub(crate) fn random_amplitudes(grid: &BoxGrid, r: &mut ChaCha8Rng) -> ModeAmplitudes {
    let amps = ModeAmplitudes::from_fn(grid, |_, _| {
        core::array::from_fn(|_| r.random_range(-1.0..1.0))
    });
    let f = mode_synthesize(&amps, 0.0, 0.0);
    let n = scalar_product(&f, &f).map(f64::sqrt).unwrap_or(1.0);
    ModeAmplitudes {
        grid: grid.clone(),
        values: amps.values.iter().map(|a| a.map(|x| x / n)).collect(),
    }
}

struct DynamicsRun {
    gap: f64,
    drift: f64,
}

/// Closed form vs RK4 at `t = 50/E_max` with `dt·E_max = 0.02`.
fn two_solver_run(grid: &BoxGrid, m: f64, amps: &ModeAmplitudes) -> Result<DynamicsRun, CliError> {
    let t = 50.0 / grid.e_max(m);
    let nsteps = 2500;
    let psi0 = mode_synthesize(amps, m, 0.0);
    let n0 = scalar_product(&psi0, &psi0)?;
    let mut drift = 0.0f64;
    let mut last = psi0.clone();
    rk4_visit(&psi0, m, t / nsteps as f64, nsteps, |_, f| {
        drift = drift.max((scalar_product(f, f).unwrap_or(f64::NAN) - n0).abs());
        last = f.clone();
    })?;
    Ok(DynamicsRun {
        gap: last.l2_distance(&mode_synthesize(amps, m, t))?,
        drift,
    })
}

fn rel(actual: f64, expect: f64) -> f64 {
    if expect == 0.0 {
        actual.abs()
    } else {
        ((actual - expect) / expect).abs()
    }
}

fn flat(co: &ModeCoefficients) -> Vec<f64> {
    co.a_plus
        .iter()
        .chain(&co.a_minus)
        .chain(&co.b_plus)
        .chain(&co.b_minus)
        .copied()
        .collect()
}

fn smooth_complex_field(grid: &BoxGrid, r: &mut ChaCha8Rng) -> ComplexBispinorField {
    let modes: Vec<([f64; 3], ComplexBispinor)> = (0..4)
        .map(|_| {
            let k = [0, 1, 2].map(|_| r.random_range(-2..=2) as f64);
            let c = ComplexBispinor::from_fn(|_, _| {
                Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
            });
            (k, c)
        })
        .collect();
    let dk = grid.dk();
    ComplexBispinorField::from_fn(grid, |x| {
        modes.iter().fold(ComplexBispinor::zeros(), |acc, (k, c)| {
            acc + c * Complex64::from_polar(1.0, dk * (k[0] * x[0] + k[1] * x[1] + k[2] * x[2]))
        })
    })
}

pub(super) fn run(params: &SuiteParams) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    let base = if params.mass > 0.0 { params.mass } else { 1.0 };

    let grid1 = BoxGrid::new(64, 20.0, 1)?;
    let mut r = rng_for(params, 20);
    let mut runs = Vec::new();
    let c1 = timed(
        "solver.dynamics.two_solver_1d",
        "closed-form modes = RK4 of ∂ₜψ = ĥψ",
        1e-6,
        || {
            max_of((0..20).map(|k| {
                let amps = random_amplitudes(&grid1, &mut r);
                match two_solver_run(&grid1, base * (0.5 + 0.05 * k as f64), &amps) {
                    Ok(run) => {
                        let gap = run.gap;
                        runs.push(run);
                        gap
                    }
                    Err(_) => f64::NAN,
                }
            }))
        },
    );
    out.push(c1);
    let grid3 = BoxGrid::new(16, 8.0, 3)?;
    let mut r = rng_for(params, 21);
    out.push(timed(
        "solver.dynamics.two_solver_3d",
        "closed-form modes = RK4 of ∂ₜψ = ĥψ",
        1e-6,
        || {
            let amps = random_amplitudes(&grid3, &mut r);
            match two_solver_run(&grid3, base, &amps) {
                Ok(run) => {
                    let gap = run.gap;
                    runs.push(run);
                    gap
                }
                Err(_) => f64::NAN,
            }
        },
    ));
    out.push(CheckReport::new(
        "solver.dynamics.norm_drift",
        "d/dt ∫ψᵀψ d³x = 0",
        if runs.len() == 21 {
            max_of(runs.iter().map(|r| r.drift))
        } else {
            f64::NAN
        },
        1e-8,
    ));

    let grid = BoxGrid::new(8, 6.0, 3)?;
    let mut r = rng_for(params, 22);
    out.push(timed(
        "solver.dynamics.dirac_residual",
        "iγ^μ∂_μψ − mψ = 0",
        1e-10,
        || {
            let amps = random_amplitudes(&grid, &mut r);
            max_of([(0.0, 0.7), (base, 2.5), (2.0 * base, -1.0)].map(|(m, t)| {
                dirac_residual_with_rate(&mode_synthesize(&amps, m, t), &mode_rate(&amps, m, t), m)
                    .unwrap_or(f64::NAN)
            }))
        },
    ));
    let mut r = rng_for(params, 23);
    out.push(timed(
        "solver.dynamics.round_trip",
        "modes(ψ(t = 0)) = (c, d)",
        1e-12,
        || {
            let amps = random_amplitudes(&grid, &mut r);
            amplitudes_from_field(&mode_synthesize(&amps, base, 0.0)).max_abs_diff(&amps)
        },
    ));
    let mut r = rng_for(params, 24);
    out.push(timed(
        "solver.dynamics.antisymmetry",
        "⟨ψ₁|ĥψ₂⟩ = −⟨ĥψ₁|ψ₂⟩",
        1e-12,
        || {
            max_of((0..5).map(|_| {
                let mut rand_field = || {
                    BispinorField::from_fn(&grid, |_| {
                        nalgebra::Vector4::from_fn(|_, _| r.random_range(-1.0..1.0))
                    })
                };
                let (a, b) = (rand_field(), rand_field());
                let lhs = scalar_product(&a, &hamiltonian_apply(&b, base)).unwrap_or(f64::NAN);
                let rhs = scalar_product(&hamiltonian_apply(&a, base), &b).unwrap_or(f64::NAN);
                (lhs + rhs).abs() / (1.0 + lhs.abs())
            }))
        },
    ));

    // single-mode coefficient checks
    let c = [0.8, -0.35];
    out.push(timed(
        "solver.single_mode.massless_exact",
        "m = 0: A¹₊ = 2c₁, A²₊ = 2c₂, B¹₊ = −2c₂, B²₊ = 2c₁, rest 0",
        1e-15,
        || {
            let co = mode_coefficients(2.7, 0.0, [c[0], c[1], 0.0, 0.0]);
            let mut expect = [0.0; 16];
            expect[0] = 2.0 * c[0];
            expect[1] = 2.0 * c[1];
            expect[8] = -2.0 * c[1];
            expect[9] = 2.0 * c[0];
            max_of(flat(&co).iter().zip(expect).map(|(a, e)| (a - e).abs()))
        },
    ));
    let mut r = rng_for(params, 25);
    out.push(timed(
        "solver.single_mode.pairing_rank",
        "m > 0: A₋ = B₋ = 0 ⇒ c = d = 0",
        0.0,
        || {
            max_of((0..20).map(|_| {
                let q = Vector3::from_fn(|_, _| r.random_range(-3.0..3.0));
                pairing_check(&q, r.random_range(0.01..3.0), [1.0, 0.0], [0.0, 1.0]).map_or(
                    f64::NAN,
                    |p| {
                        (4.0 - p.minus_rank as f64)
                            .abs()
                            .max((4.0 - p.plus_rank as f64).abs())
                    },
                )
            }))
        },
    ));
    out.push(timed(
        "solver.single_mode.massless_unidirectional",
        "m = 0, d = 0: A₋ = B₋ = 0",
        0.0,
        || {
            let q: Momentum3 = Vector3::new(0.3, -1.0, 0.4);
            pairing_check(&q, 0.0, c, [0.0, 0.0]).map_or(f64::NAN, |p| {
                let co = p.coefficients;
                let minus = max_of(co.a_minus.iter().chain(&co.b_minus).map(|x| x.abs()));
                if p.plus_vanishes {
                    f64::INFINITY
                } else {
                    minus
                }
            })
        },
    ));
    let mu = 1e-3_f64;
    let high = mode_coefficients((1.0 / (mu * mu) - 1.0).sqrt(), 1.0, [c[0], c[1], 0.0, 0.0]);
    let h = mu * mu / 2.0;
    #[rustfmt::skip]
    let high_display = [
        2.0 * c[0], 2.0 * c[1], mu * c[1], mu * c[0],
        h * c[0], h * c[1], -mu * c[1], -mu * c[0],
        -2.0 * c[1], 2.0 * c[0], mu * c[0], -mu * c[1],
        -h * c[1], h * c[0], -mu * c[0], mu * c[1],
    ];
    out.push(timed(
        "solver.single_mode.high_energy",
        "m/E = 1e-3: A¹₊ ≈ 2c₁, A³₊ = (m/E)c₂, A¹₋ ≈ (m²/2E²)c₁, A⁴₋ = −(m/E)c₁, …",
        1e-5,
        || {
            max_of(
                flat(&high)
                    .iter()
                    .zip(high_display)
                    .map(|(a, e)| rel(*a, e)),
            )
        },
    ));
    let low = mode_coefficients(1e-3, 1.0, [c[0], c[1], 0.0, 0.0]);
    #[rustfmt::skip]
    let low_display = [
        c[0], c[1], c[1], c[0],
        c[0], c[1], -c[1], -c[0],
        -c[1], c[0], c[0], -c[1],
        -c[1], c[0], -c[0], c[1],
    ];
    out.push(timed(
        "solver.single_mode.low_energy",
        "p/m = 1e-3: A^i± ≈ (c₁, c₂, ±c₂, ±c₁), B^i± ≈ (−c₂, c₁, ±c₁, ∓c₂)",
        1e-5,
        || max_of(flat(&low).iter().zip(low_display).map(|(a, e)| rel(*a, e))),
    ));
    out.push(timed(
        "solver.single_mode.low_energy_first_order",
        "p/m = 1e-3: A¹± = (1 ± p/E)c₁ etc. with the O(p/m) factor kept",
        1e-5,
        || {
            let r = 1e-3 / (1.0 + 1e-6f64).sqrt();
            let f = [1.0 + r, 1.0 + r, 1.0, 1.0, 1.0 - r, 1.0 - r, 1.0, 1.0];
            max_of(
                flat(&low)
                    .iter()
                    .zip(low_display)
                    .enumerate()
                    .map(|(i, (a, e))| rel(*a, e * f[i % 8])),
            )
        },
    ));

    // Majorana mass splitting
    let grid = BoxGrid::new(8, 6.0, 3)?;
    let mut r = rng_for(params, 26);
    let (a, b) = (
        smooth_complex_field(&grid, &mut r),
        smooth_complex_field(&grid, &mut r),
    );
    let (m, mm) = (base, 0.4 * base);
    let times = [0.0, 0.4, 3.3];
    let splits: Vec<_> = times
        .iter()
        .map(|t| {
            majorana_mass_evolve(&a, m, mm, *t)
                .and_then(|x| Ok((x, majorana_mass_evolve(&b, m, mm, *t)?)))
        })
        .collect::<Result<_, _>>()?;
    out.push(timed(
        "solver.majorana_split.parity_even",
        "(ψ₊)_c = ψ₊ at all t",
        1e-10,
        || {
            max_of(splits.iter().flat_map(|(x, _)| {
                x.plus
                    .values
                    .iter()
                    .map(|p| max_abs_c(&(charge_conjugate(p) - p)))
            }))
        },
    ));
    out.push(timed(
        "solver.majorana_split.parity_odd",
        "(ψ₋)_c = −ψ₋ at all t",
        1e-10,
        || {
            max_of(splits.iter().flat_map(|(x, _)| {
                x.minus
                    .values
                    .iter()
                    .map(|p| max_abs_c(&(charge_conjugate(p) + p)))
            }))
        },
    ));
    out.push(timed(
        "solver.majorana_split.scalar_product",
        "Re⟨ψ₁|ψ₂⟩ = Re⟨ψ₁₊|ψ₂₊⟩ + Re⟨ψ₁₋|ψ₂₋⟩",
        1e-8,
        || {
            max_of(splits.iter().map(|(x, y)| {
                let whole = x.total().inner(&y.total()).map_or(f64::NAN, |z| z.re);
                let parts = x.plus.inner(&y.plus).map_or(f64::NAN, |z| z.re)
                    + x.minus.inner(&y.minus).map_or(f64::NAN, |z| z.re);
                (whole - parts).abs() / whole.abs().max(1.0)
            }))
        },
    ));
    Ok(out)
}
