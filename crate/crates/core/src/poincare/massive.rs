//! Massive orbit: the momentum-space scalar product, Kronecker-basis
//! amplitudes and their Wigner-rotation transformation law.

use alloc::vec::Vec;

use num_traits::Float;

use super::lorentz::{boost_to, on_shell, spatial, wigner_rotation, FourVector, LorentzTransform};
use super::spinor::{spinor_rep, SpinorTransform};
use super::MomentumSamples;
use crate::algebra::RealGammas;
use crate::linalg::{Mat4, Momentum3, RealBispinor};
use crate::{Error, Result};

fn positive_mass(m: f64) -> Result<()> {
    if m > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveMass(m))
    }
}

/// `γ⁰(γ⁰E − γᵏpᵏ) = E − γ⁰γᵏpᵏ`, the real symmetric kernel of the
/// momentum-space products (`v̄ = vᵀγ⁰`).
pub fn shell_kernel(p: &Momentum3, e: f64) -> Mat4 {
    Mat4::identity() * e - RealGammas::paper().gamma0_gamma_dot(p)
}

/// `v₋ = (1/m)(γ⁰E − γᵏpᵏ)γ₅ v₊`, the partner fixed by the coupled mode
/// equations.
pub fn massive_v_minus(p: &Momentum3, m: f64, v_plus: &RealBispinor) -> Result<RealBispinor> {
    positive_mass(m)?;
    let g = RealGammas::paper();
    let e = (m * m + p.norm_squared()).sqrt();
    // (γ⁰E − γ·p)γ₅ = −(iγ⁰E − iγ·p)(iγ₅)
    let op = -(g.i_gamma[0] * e - g.i_gamma_dot(p)) * g.i_gamma5();
    Ok(op * v_plus / m)
}

/// Right-hand side of `v̇(p) = −iγ⁰γᵏγ₅pᵏ v(p) − imγ⁰ v(−p)` for the
/// pair `(v(p), v(−p))`.
pub fn momentum_evolution_rhs(
    v_p: &RealBispinor,
    v_minus_p: &RealBispinor,
    p: &Momentum3,
    m: f64,
) -> (RealBispinor, RealBispinor) {
    let g = RealGammas::paper();
    let k = -g.gamma0_gamma_dot(p) * g.i_gamma5();
    let c = g.i_gamma[0] * m;
    (k * v_p - c * v_minus_p, -k * v_minus_p - c * v_p)
}

/// `(2/m²) Σ w/E v̄₁₊(γ⁰E − γᵏpᵏ)v₂₊`.
pub fn massive_scalar_product(
    samples: &MomentumSamples,
    m: f64,
    v1: &[RealBispinor],
    v2: &[RealBispinor],
) -> Result<f64> {
    positive_mass(m)?;
    samples.check_len(v1.len())?;
    samples.check_len(v2.len())?;
    let mut sum = 0.0;
    for ((p, w), (a, b)) in samples
        .momenta
        .iter()
        .zip(&samples.weights)
        .zip(v1.iter().zip(v2))
    {
        let e = (m * m + p.norm_squared()).sqrt();
        sum += w / e * a.dot(&(shell_kernel(p, e) * b));
    }
    Ok(2.0 / (m * m) * sum)
}

/// `(2/m²) Σ w/E a₁ⁱa₂ⁱ`.
pub fn amplitude_scalar_product(
    samples: &MomentumSamples,
    m: f64,
    a1: &[RealBispinor],
    a2: &[RealBispinor],
) -> Result<f64> {
    positive_mass(m)?;
    samples.check_len(a1.len())?;
    samples.check_len(a2.len())?;
    let sum: f64 = samples
        .momenta
        .iter()
        .zip(&samples.weights)
        .zip(a1.iter().zip(a2))
        .map(|((p, w), (x, y))| w / (m * m + p.norm_squared()).sqrt() * x.dot(y))
        .sum();
    Ok(2.0 / (m * m) * sum)
}

/// Components of `v₊(p)` in the basis `S(H(p))eᵢ/√m`: `a = √m S(H(p))⁻¹v₊`.
pub fn massive_amplitude(p: &Momentum3, m: f64, v_plus: &RealBispinor) -> Result<RealBispinor> {
    positive_mass(m)?;
    let h = boost_to(&on_shell(p, m), m)?;
    Ok(spinor_rep(&h).inverse()?.matrix * v_plus * m.sqrt())
}

pub fn massive_amplitudes(
    samples: &MomentumSamples,
    m: f64,
    v_plus: &[RealBispinor],
) -> Result<Vec<RealBispinor>> {
    samples.check_len(v_plus.len())?;
    samples
        .momenta
        .iter()
        .zip(v_plus)
        .map(|(p, v)| massive_amplitude(p, m, v))
        .collect()
}

/// Inverse of [`massive_amplitude`].
pub fn bispinor_from_amplitude(p: &Momentum3, m: f64, a: &RealBispinor) -> Result<RealBispinor> {
    positive_mass(m)?;
    let h = boost_to(&on_shell(p, m), m)?;
    Ok(spinor_rep(&h).matrix * a / m.sqrt())
}

/// Momentum data pushed forward by `L`: each sample `p` moves to `Lp`
/// and its `d³p` weight scales by `E′/E` (so `d³p/E` is unchanged).
pub fn transform_samples(
    samples: &MomentumSamples,
    l: &LorentzTransform,
    m: f64,
) -> MomentumSamples {
    let (momenta, weights) = samples
        .momenta
        .iter()
        .zip(&samples.weights)
        .map(|(p, w)| {
            let four = on_shell(p, m);
            let moved = l.apply(&four);
            (spatial(&moved), w * moved[0] / four[0])
        })
        .unzip();
    MomentumSamples { momenta, weights }
}

/// Bispinor law `v′(p′) = S(L)v(L⁻¹p′)`, returned at the moved samples.
pub fn lorentz_transform_bispinors(
    samples: &MomentumSamples,
    v: &[RealBispinor],
    l: &LorentzTransform,
    m: f64,
) -> Result<(MomentumSamples, Vec<RealBispinor>)> {
    samples.check_len(v.len())?;
    let s = spinor_rep(l);
    Ok((
        transform_samples(samples, l, m),
        v.iter().map(|x| s.matrix * x).collect(),
    ))
}

/// Amplitude law `a′(p′) = S(R(L, p′)) a(L⁻¹p′)`, with `R` the Wigner
/// rotation. Agrees with [`lorentz_transform_bispinors`] followed by
/// [`massive_amplitudes`] up to a sign per sample (double cover).
pub fn wigner_transform_amplitudes(
    samples: &MomentumSamples,
    a: &[RealBispinor],
    l: &LorentzTransform,
    m: f64,
) -> Result<(MomentumSamples, Vec<RealBispinor>)> {
    samples.check_len(a.len())?;
    let moved = transform_samples(samples, l, m);
    let out = moved
        .momenta
        .iter()
        .zip(a)
        .map(|(p, x)| {
            let r = wigner_rotation(l, &on_shell(p, m), m)?;
            Ok(spinor_rep(&r).matrix * x)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((moved, out))
}

/// `e^{±iγ₅ p·a}` with `p·a` the Minkowski product.
pub fn translation_phase(p: &FourVector, a: &FourVector, sign: f64) -> Mat4 {
    let pa = super::lorentz::minkowski(p, a);
    let (s, c) = pa.sin_cos();
    Mat4::identity() * c + RealGammas::paper().i_gamma5() * (sign.signum() * s)
}

/// Translation `v′(p) = e^{±iγ₅pa}v(p)` for on-shell data of mass `m`.
pub fn translate_bispinors(
    samples: &MomentumSamples,
    v: &[RealBispinor],
    a: &FourVector,
    sign: f64,
    m: f64,
) -> Result<Vec<RealBispinor>> {
    samples.check_len(v.len())?;
    Ok(samples
        .momenta
        .iter()
        .zip(v)
        .map(|(p, x)| translation_phase(&on_shell(p, m), a, sign) * x)
        .collect())
}

/// `S(H(p′))⁻¹ S(L) S(H(p))` for `p′ = Lp`: the exact representative of
/// the Wigner rotation fixed by the bispinor law, for sign comparisons.
pub fn induced_rotation_spinor(
    l: &LorentzTransform,
    p: &Momentum3,
    m: f64,
) -> Result<SpinorTransform> {
    let four = on_shell(p, m);
    let moved = l.apply(&four);
    let h_new = spinor_rep(&boost_to(&moved, m)?);
    let h_old = spinor_rep(&boost_to(&four, m)?);
    Ok(h_new.inverse()? * spinor_rep(l) * h_old)
}
