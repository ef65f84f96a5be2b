use majorana_core::algebra::RealGammas;
use majorana_core::axial::*;
use majorana_core::grid::{BispinorField, BoxGrid};
use majorana_core::linalg::{max_abs, Mat8, Momentum3, RealBispinor};
use majorana_core::solver::{scalar_product, spectral_propagate_with};
use nalgebra::Vector3;
use rand::Rng;

use super::{max_of, rng_for, timed, SuiteParams};
use crate::report::CheckReport;

fn momentum(r: &mut impl Rng, scale: f64) -> Momentum3 {
    Vector3::from_fn(|_, _| r.random_range(-scale..scale))
}

fn unit(r: &mut impl Rng) -> RealBispinor {
    RealBispinor::from_fn(|_, _| r.random_range(-1.0..1.0)).normalize()
}

/// Directions along, near and opposite `e₂`, where the closed form's
/// denominator degenerates.
fn second_axis_directions() -> [Momentum3; 5] {
    [
        Vector3::new(0.0, 1.0, 0.0),
        Vector3::new(0.0, 3.5, 0.0),
        Vector3::new(1e-9, 1.0, -2e-9),
        Vector3::new(5e-7, 1.0, 0.0),
        Vector3::new(0.0, -2.0, 0.0),
    ]
}

fn heisenberg_oracle(op: &Mat8, p: &Momentum3, m: f64, t: f64) -> Mat8 {
    let h = pair_hamiltonian(p, m).matrix;
    (h * -t).exp() * op * (h * t).exp()
}

fn heisenberg_on_grid(
    grid: &BoxGrid,
    q: &Momentum3,
    w: &RealBispinor,
    m: f64,
    t: f64,
) -> [BispinorField; 3] {
    let g = RealGammas::paper();
    let psi = plane_wave_field(grid, q, w).expect("unit bispinor");
    let forward = spectral_propagate_with(&g, &psi, m, t);
    axial_momentum_apply(&forward).map(|f| spectral_propagate_with(&g, &f, m, -t))
}

pub(super) fn run(params: &SuiteParams) -> Vec<CheckReport> {
    let mut out = Vec::new();

    let grid = BoxGrid::new(8, 3.0, 3).expect("valid grid");
    let mut r = rng_for(params, 10);
    out.push(timed(
        "axial.eigenrelation",
        "p̂₅ψ_p = pψ_p",
        1e-10,
        || {
            max_of((0..20).map(|_| {
                let label = [
                    r.random_range(-3..4),
                    r.random_range(-3..4),
                    r.random_range(-3..4),
                ];
                let p = grid.momentum(grid.index_of_label(label));
                let psi = plane_wave_field(&grid, &p, &unit(&mut r)).expect("unit bispinor");
                max_of(
                    axial_momentum_apply(&psi)
                        .iter()
                        .enumerate()
                        .map(|(j, d)| d.l2_distance(&psi.scaled(p[j])).unwrap_or(f64::NAN)),
                )
            }))
        },
    ));

    let mut r = rng_for(params, 11);
    let mut momenta: Vec<_> = (0..200).map(|_| momentum(&mut r, 4.0)).collect();
    momenta.extend(second_axis_directions());
    let bases: Vec<_> = momenta.iter().map(|p| helicity_basis(p).ok()).collect();
    out.push(timed(
        "axial.basis.orthonormality",
        "vᵀ_α v_β = δ_αβ",
        1e-10,
        || {
            max_of(
                bases
                    .iter()
                    .map(|b| b.map_or(f64::NAN, |b| b.orthonormality_residual())),
            )
        },
    ));
    out.push(timed(
        "axial.basis.eigenvalues",
        "γ⁰γᵏpᵏ v± = ±|p| v±",
        1e-10,
        || {
            max_of(
                bases
                    .iter()
                    .map(|b| b.map_or(f64::NAN, |b| b.eigen_residual() / b.p.norm().max(1.0))),
            )
        },
    ));
    out.push(timed(
        "axial.basis.second_axis_fallback",
        "basis at p ∝ e₂",
        1e-10,
        || {
            max_of(second_axis_directions().iter().map(|p| {
                helicity_basis(p).map_or(f64::NAN, |b| {
                    b.orthonormality_residual().max(b.eigen_residual())
                })
            }))
        },
    ));

    let mut r = rng_for(params, 12);
    out.push(timed(
        "axial.commutator",
        "[p̂₅, ĥ] = 2imγ⁰p̂₅",
        1e-10,
        || {
            max_of(
                (0..100)
                    .map(|_| commutator_check(&momentum(&mut r, 3.0), r.random_range(0.0..3.0))),
            )
        },
    ));

    let mut r = rng_for(params, 13);
    out.push(timed(
        "axial.heisenberg_vs_exponential",
        "γ₅(t) = γ₅ + imÊ⁻¹γ⁰γ₅[sin 2Êt + Ĵ(1 − cos 2Êt)]",
        1e-10,
        || {
            max_of((0..100).map(|_| {
                let p = momentum(&mut r, 2.0);
                let (m, t) = (r.random_range(0.0..2.0), r.random_range(-5.0..5.0));
                let g5 = max_abs(
                    &(gamma5_heisenberg(&p, m, t).matrix
                        - heisenberg_oracle(&pair_i_gamma5(), &p, m, t)),
                );
                let pj = axial_momentum_heisenberg(&p, m, t)
                    .iter()
                    .zip(pair_axial_momentum(&p, m))
                    .map(|(a, b)| max_abs(&(a.matrix - heisenberg_oracle(&b.matrix, &p, m, t))))
                    .fold(0.0, f64::max);
                g5.max(pj)
            }))
        },
    ));

    let grid = BoxGrid::new(8, 4.0, 3).expect("valid grid");
    let mut r = rng_for(params, 14);
    out.push(timed(
        "axial.matrix_element_quadrature",
        "∫ψ_pᵀp̂₅(t)ψ_q = p[1 + (m²/E²)(cos 2Et − 1)]vᵀw δ(p−q) − p(m/E)[…]δ(p+q)",
        1e-8,
        || {
            max_of((0..6).map(|_| {
                let label = [
                    r.random_range(-3..4),
                    r.random_range(-3..4),
                    r.random_range(1..4),
                ];
                let p = grid.momentum(grid.index_of_label(label));
                let (v, w) = (unit(&mut r), unit(&mut r));
                let (m, t) = (r.random_range(0.2..2.0), r.random_range(0.0..4.0));
                let Ok((same, opposite)) = axial_matrix_element(&p, &v, &w, m, t) else {
                    return f64::NAN;
                };
                let bra = plane_wave_field(&grid, &p, &v).expect("unit bispinor");
                let at_p = heisenberg_on_grid(&grid, &p, &w, m, t);
                let at_minus_p = heisenberg_on_grid(&grid, &-p, &w, m, t);
                max_of((0..3).map(|j| {
                    let a = scalar_product(&bra, &at_p[j]).unwrap_or(f64::NAN) - same[j];
                    let b = scalar_product(&bra, &at_minus_p[j]).unwrap_or(f64::NAN) - opposite[j];
                    a.abs().max(b.abs())
                }))
            }))
        },
    ));
    out
}
