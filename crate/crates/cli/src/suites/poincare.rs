use std::f64::consts::PI;
use std::str::FromStr;

use majorana_core::grid::BoxGrid;
use majorana_core::linalg::{max_abs, rank, Mat4, Momentum3, RealBispinor};
use majorana_core::poincare::massive::{
    amplitude_scalar_product, lorentz_transform_bispinors, massive_amplitudes,
    massive_scalar_product, massive_v_minus,
};
use majorana_core::poincare::massless::{massless_kernel, null_matrix};
use majorana_core::poincare::su2::{conjugation_residual, rotation_to_su2};
use majorana_core::poincare::*;
use majorana_core::solver::scalar_product;
use nalgebra::{Matrix2, Vector3, Vector4};
use num_complex::Complex64;
use rand::Rng;

use super::{max_of, rng_for, timed, SuiteParams};
use crate::report::CheckReport;
use crate::CliError;

const CASES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepCase {
    Massive,
    Massless,
    Both,
}

impl FromStr for RepCase {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "massive" => Ok(RepCase::Massive),
            "massless" => Ok(RepCase::Massless),
            "both" => Ok(RepCase::Both),
            other => Err(CliError::Usage(format!(
                "unknown case '{other}' (expected massive, massless or both)"
            ))),
        }
    }
}

impl RepCase {
    pub fn name(self) -> &'static str {
        match self {
            RepCase::Massive => "massive",
            RepCase::Massless => "massless",
            RepCase::Both => "both",
        }
    }
}

fn ball(r: &mut impl Rng, radius: f64) -> Vector3<f64> {
    loop {
        let v = Vector3::from_fn(|_, _| r.random_range(-1.0..1.0));
        if v.norm() <= 1.0 {
            return v * radius;
        }
    }
}

/// Rapidity at most 2, rotation angle at most π.
fn random_lorentz(r: &mut impl Rng) -> LorentzTransform {
    LorentzTransform::from_parameters(&ball(r, 2.0), &ball(r, PI))
}

fn random4(r: &mut impl Rng) -> RealBispinor {
    RealBispinor::from_fn(|_, _| r.random_range(-1.0..1.0))
}

fn lattice_packet(
    grid: &BoxGrid,
    m: f64,
    r: &mut impl Rng,
) -> (Vec<RealBispinor>, Vec<RealBispinor>) {
    let mut v_plus = vec![RealBispinor::zeros(); grid.len()];
    let mut v_minus = vec![RealBispinor::zeros(); grid.len()];
    for i in lattice_indices(grid) {
        let p = grid.momentum(i);
        v_plus[i] = random4(r) * (-p.norm_squared() / 4.0).exp();
        v_minus[i] =
            massive_v_minus(&p, m, &v_plus[i]).unwrap_or_else(|_| RealBispinor::repeat(f64::NAN));
    }
    (v_plus, v_minus)
}

fn massive(params: &SuiteParams) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let m = 1.3;
    let rest = Vector4::new(m, 0.0, 0.0, 0.0);
    let mut r = rng_for(params, 30);
    let cases: Vec<_> = (0..CASES)
        .map(|_| {
            (
                random_lorentz(&mut r),
                random_lorentz(&mut r),
                on_shell(&ball(&mut r, 2.0), m),
            )
        })
        .collect();
    out.push(timed(
        "poincare.massive.wigner_fixes_rest",
        "R(L, p) p̊ = p̊",
        1e-10,
        || {
            max_of(cases.iter().map(|(l, _, p)| {
                wigner_rotation(l, p, m).map_or(f64::NAN, |w| {
                    (w.apply(&rest) - rest).amax().max(w.rotation_residual())
                })
            }))
        },
    ));
    out.push(timed(
        "poincare.massive.wigner_cocycle",
        "R(L₁L₂, p) = R(L₁, p) R(L₂, L₁⁻¹p)",
        1e-10,
        || {
            max_of(cases.iter().map(|(l1, l2, p)| {
                let lhs = wigner_rotation(&(*l1 * *l2), p, m);
                let a = wigner_rotation(l1, p, m);
                let b = wigner_rotation(l2, &l1.inverse().apply(p), m);
                match (lhs, a, b) {
                    (Ok(lhs), Ok(a), Ok(b)) => max_abs(&(lhs.matrix - (a * b).matrix)),
                    _ => f64::NAN,
                }
            }))
        },
    ));

    let grid = BoxGrid::new(16, 12.0, 3).expect("valid grid");
    let pm = 0.9;
    let mut r = rng_for(params, 31);
    let (vp, vm) = lattice_packet(&grid, pm, &mut r);
    let (wp, wm) = lattice_packet(&grid, pm, &mut r);
    let samples = MomentumSamples::lattice(&grid);
    let compact = |v: &[RealBispinor]| lattice_indices(&grid).map(|i| v[i]).collect::<Vec<_>>();
    let (a, b) = (compact(&vp), compact(&wp));
    let momentum_form = massive_scalar_product(&samples, pm, &a, &b).unwrap_or(f64::NAN);
    let scale = momentum_form.abs().max(1.0);
    out.push(timed(
        "poincare.massive.momentum_vs_position_product",
        "(2/m²)∫d³p/E v̄₁₊(γ⁰E − γᵏpᵏ)v₂₊ = ∫d³x ψ₁ᵀψ₂",
        1e-6,
        || {
            max_of([0.0, 2.3].map(|t| {
                let f = momentum_synthesis(&grid, pm, &vp, &vm, t);
                let g = momentum_synthesis(&grid, pm, &wp, &wm, t);
                match (f, g) {
                    (Ok(f), Ok(g)) => {
                        (scalar_product(&f, &g).unwrap_or(f64::NAN) - momentum_form).abs() / scale
                    }
                    _ => f64::NAN,
                }
            }))
        },
    ));
    out.push(timed(
        "poincare.massive.amplitude_vs_momentum_product",
        "(2/m²)∫d³p/E aᵢ₁aᵢ₂ = (2/m²)∫d³p/E v̄₁₊(γ⁰E − γᵏpᵏ)v₂₊",
        1e-6,
        || {
            let amp = massive_amplitudes(&samples, pm, &a)
                .and_then(|x| Ok((x, massive_amplitudes(&samples, pm, &b)?)))
                .and_then(|(x, y)| amplitude_scalar_product(&samples, pm, &x, &y));
            amp.map_or(f64::NAN, |v| (v - momentum_form).abs() / scale)
        },
    ));

    let mut r = rng_for(params, 32);
    let n = 40;
    let momenta: Vec<Momentum3> = (0..n).map(|_| ball(&mut r, 2.0)).collect();
    let weights: Vec<f64> = (0..n).map(|_| r.random_range(0.1..1.0)).collect();
    let samples = MomentumSamples::new(momenta, weights).expect("equal lengths");
    let v: Vec<_> = (0..n).map(|_| random4(&mut r)).collect();
    let w: Vec<_> = (0..n).map(|_| random4(&mut r)).collect();
    out.push(timed(
        "poincare.massive.lorentz_invariance",
        "v′(p′) = S(L)v(L⁻¹p′) preserves the momentum-space product",
        1e-8,
        || {
            let before = massive_scalar_product(&samples, m, &v, &w).unwrap_or(f64::NAN);
            max_of((0..20).map(|_| {
                let l = random_lorentz(&mut r);
                let moved = lorentz_transform_bispinors(&samples, &v, &l, m).and_then(|(s, v2)| {
                    Ok((s, v2, lorentz_transform_bispinors(&samples, &w, &l, m)?.1))
                });
                moved.map_or(f64::NAN, |(s, v2, w2)| {
                    let after = massive_scalar_product(&s, m, &v2, &w2).unwrap_or(f64::NAN);
                    (after - before).abs() / before.abs().max(1.0)
                })
            }))
        },
    ));

    let mut r = rng_for(params, 33);
    out.push(timed(
        "poincare.massive.intertwiner",
        "O S(R) O⁻¹ = ±T̂(α, β)",
        1e-10,
        || {
            max_of((0..CASES).map(|_| {
                let rot = LorentzTransform::rotation(&ball(&mut r, 1.0), r.random_range(-PI..PI));
                rotation_to_su2(&rot.spatial_block())
                    .and_then(|(a, b)| conjugation_residual(&spinor_rep(&rot), a, b))
                    .unwrap_or(f64::NAN)
            }))
        },
    ));
    out.push(timed(
        "poincare.massive.full_turn",
        "S(R(2π)) = −I",
        1e-15,
        || {
            max_of(
                [
                    Vector3::x(),
                    Vector3::y(),
                    Vector3::z(),
                    Vector3::new(0.3, -1.0, 2.0),
                ]
                .map(|axis| max_abs(&(rotation_spinor(&axis, 2.0 * PI).matrix + Mat4::identity()))),
            )
        },
    ));
    out
}

fn massless(params: &SuiteParams) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut r = rng_for(params, 40);
    let momenta: Vec<Momentum3> = (0..CASES).map(|_| ball(&mut r, 2.0)).collect();
    out.push(timed(
        "poincare.massless.nilpotency",
        "[i(γ⁰|p| − γᵏpᵏ)]² = 0",
        1e-13,
        || {
            max_of(momenta.iter().map(|p| {
                null_matrix(p).map_or(f64::NAN, |n| max_abs(&(n * n)) / p.norm_squared().max(1.0))
            }))
        },
    ));
    out.push(timed(
        "poincare.massless.kernel_is_pure_gauge",
        "ker(|p| − γ⁰γᵏpᵏ) = range i(γ⁰|p| − γᵏpᵏ)",
        1e-12,
        || {
            max_of(momenta.iter().map(|p| {
                let Ok(n) = null_matrix(p) else {
                    return f64::NAN;
                };
                let k = massless_kernel(p);
                if rank(&n, 1e-10) != 2 || rank(&k, 1e-10) != 2 {
                    return f64::INFINITY;
                }
                max_abs(&(k * n)) / p.norm_squared().max(1.0)
            }))
        },
    ));
    let samples = MomentumSamples::new(momenta.clone(), vec![0.5; CASES]).expect("equal lengths");
    let mut r = rng_for(params, 41);
    let mut draw = || (0..CASES).map(|_| random4(&mut r)).collect::<Vec<_>>();
    let ws = [draw(), draw(), draw(), draw()];
    let chis = [draw(), draw(), draw(), draw()];
    out.push(timed(
        "poincare.massless.gauge_invariance",
        "w± ↦ w± + i(γ⁰|p| − γᵏpᵏ)χ± leaves the massless product unchanged",
        1e-12,
        || {
            let shifted: Vec<Vec<RealBispinor>> = ws
                .iter()
                .zip(&chis)
                .map(|(w, chi)| {
                    w.iter()
                        .zip(chi)
                        .zip(&momenta)
                        .map(|((w, c), p)| {
                            gauge_transform(w, c, p).unwrap_or(RealBispinor::repeat(f64::NAN))
                        })
                        .collect()
                })
                .collect();
            let before = massless_scalar_product(&samples, &ws[0], &ws[1], &ws[2], &ws[3])
                .unwrap_or(f64::NAN);
            let after = massless_scalar_product(
                &samples,
                &shifted[0],
                &shifted[1],
                &shifted[2],
                &shifted[3],
            )
            .unwrap_or(f64::NAN);
            (after - before).abs() / before.abs().max(1.0)
        },
    ));

    let kappa = 1.0;
    let pk = standard_null(kappa);
    let mut r = rng_for(params, 42);
    out.push(timed(
        "poincare.massless.little_group_fixes",
        "E(L, p)(κ,0,0,κ)ᵀ = (κ,0,0,κ)ᵀ",
        1e-12,
        || {
            max_of((0..CASES).map(|_| {
                let l = random_lorentz(&mut r);
                little_group_massless(&l, &ball(&mut r, 2.0), kappa)
                    .map_or(f64::NAN, |a| (a.element.apply(&pk) - pk).amax())
            }))
        },
    ));
    let p = Vector3::new(0.0, 0.0, kappa);
    let angles: Vec<f64> = (0..50)
        .map(|k| -PI + (k as f64 + 0.5) * (2.0 * PI / 50.0))
        .collect();
    out.push(timed(
        "poincare.massless.amplitude_rotation",
        "c′ = R_{θ/2}c",
        1e-12,
        || {
            max_of(angles.iter().map(|th| {
                let l = LorentzTransform::rotation(&Vector3::z(), *th);
                let (c, s) = ((th / 2.0).cos(), (th / 2.0).sin());
                little_group_massless(&l, &p, kappa).map_or(f64::NAN, |a| {
                    (a.physical_block() - Matrix2::new(c, -s, s, c))
                        .amax()
                        .max(a.gauge_leak())
                })
            }))
        },
    ));
    out.push(timed(
        "poincare.massless.helicity_phase",
        "z′ = e^{iθ/2}z",
        1e-12,
        || {
            max_of(angles.iter().map(|th| {
                let l = LorentzTransform::rotation(&Vector3::z(), *th);
                little_group_massless(&l, &p, kappa).map_or(f64::NAN, |a| {
                    (a.phase() - Complex64::from_polar(1.0, th / 2.0)).norm()
                })
            }))
        },
    ));
    out
}

pub(super) fn run(case: RepCase, params: &SuiteParams) -> Vec<CheckReport> {
    match case {
        RepCase::Massive => massive(params),
        RepCase::Massless => massless(params),
        RepCase::Both => {
            let mut all = massive(params);
            all.extend(massless(params));
            all
        }
    }
}
