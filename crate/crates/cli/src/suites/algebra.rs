use majorana_core::algebra::*;
use majorana_core::linalg::{max_abs_c, ComplexBispinor, RealBispinor, TwoSpinor};
use nalgebra::Vector2;
use num_complex::Complex64;
use rand::Rng;

use super::{max_of, rng_for, timed, SuiteParams};
use crate::report::CheckReport;

const SAMPLES: usize = 200;

fn complex4(r: &mut impl Rng) -> ComplexBispinor {
    ComplexBispinor::from_fn(|_, _| {
        Complex64::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0))
    })
}

fn spinor2(r: &mut impl Rng) -> TwoSpinor {
    Vector2::from_fn(|_, _| Complex64::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)))
}

pub(super) fn run(params: &SuiteParams) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for name in RepName::ALL {
        let rep = GammaRep::new(name);
        out.push(timed(
            &format!("algebra.clifford.{name}"),
            "{γ^μ, γ^ν} = 2η^{μν}",
            1e-12,
            || clifford_residual(&rep),
        ));
        out.push(timed(
            &format!("algebra.gamma5.{name}"),
            "γ₅ = iγ⁰γ¹γ²γ³",
            1e-12,
            || gamma5_residual(&rep).max(gamma5_algebra_residual(&rep)),
        ));
        if name.is_majorana() {
            out.push(timed(
                &format!("algebra.imaginary.{name}"),
                "Re γ^μ = 0",
                0.0,
                || real_part_residual(&rep),
            ));
        }
    }

    let mut r = rng_for(params, 1);
    let psis: Vec<_> = (0..SAMPLES).map(|_| complex4(&mut r)).collect();
    out.push(timed(
        "algebra.conjugation.involution",
        "(ψ_c)_c = ψ",
        1e-13,
        || {
            max_of(
                psis.iter()
                    .map(|p| max_abs_c(&(charge_conjugate(&charge_conjugate(p)) - p))),
            )
        },
    ));
    out.push(timed(
        "algebra.conjugation.split",
        "ψ = ψ₊ + ψ₋, (ψ±)_c = ±ψ±",
        1e-13,
        || {
            max_of(psis.iter().map(|p| {
                let (a, b) = cc_split(p);
                max_abs_c(&(a + b - p))
                    .max(majorana_residual(&a))
                    .max(max_abs_c(&(charge_conjugate(&b) + b)))
            }))
        },
    ));
    let mut r = rng_for(params, 2);
    let pairs: Vec<_> = (0..SAMPLES)
        .map(|_| (spinor2(&mut r), spinor2(&mut r)))
        .collect();
    out.push(timed(
        "algebra.conjugation.split_uniqueness",
        "even + odd decomposition is unique",
        1e-13,
        || {
            max_of(pairs.iter().map(|(x, y)| {
                let even = two_spinor_to_majorana(x);
                let odd = two_spinor_to_majorana(y) * Complex64::i();
                let (a, b) = cc_split(&(even + odd));
                max_abs_c(&(a - even)).max(max_abs_c(&(b - odd)))
            }))
        },
    ));
    out.push(timed(
        "algebra.conjugation.self_conjugate_solution",
        "ψ = (ξ, −iσ₂ξ*)ᵀ solves ψ_c = ψ",
        1e-13,
        || {
            max_of(
                pairs
                    .iter()
                    .map(|(x, _)| majorana_residual(&two_spinor_to_majorana(x))),
            )
        },
    ));
    out.push(timed(
        "algebra.conjugation.two_spinor_round_trip",
        "ψ ↦ ξ ↦ ψ, ξ ↦ Ξ ↦ ξ",
        1e-13,
        || {
            max_of(pairs.iter().map(|(x, _)| {
                let psi = two_spinor_to_majorana(x);
                let back = majorana_to_two_spinor(&psi)
                    .map(|b| (b - x).camax())
                    .unwrap_or(f64::INFINITY);
                back.max((real_to_two_spinor(&two_spinor_to_real(x)) - x).camax())
            }))
        },
    ));
    let reals: Vec<_> = (0..SAMPLES)
        .map(|_| RealBispinor::from_fn(|_, _| r.random_range(-2.0..2.0)))
        .collect();
    out.push(timed(
        "algebra.conjugation.real_form_round_trip",
        "Ξ = (ξ′, ξ″) ↦ ψ ↦ Ξ",
        1e-13,
        || {
            max_of(reals.iter().map(|x| {
                let psi = real_to_majorana(x);
                let back = majorana_to_real(&psi)
                    .map(|b| (b - x).camax())
                    .unwrap_or(f64::INFINITY);
                back.max(majorana_residual(&psi))
            }))
        },
    ));
    out
}
