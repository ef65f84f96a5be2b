//! Massless orbit: the nilpotent constraint, spinorial gauge potentials and
//! the E(2) little group at `p̊ = (κ,0,0,κ)`.

use alloc::vec::Vec;

use nalgebra::{Matrix2, Vector3, Vector4};
use num_complex::Complex64;

use super::lorentz::{little_group_element, massless_boost, spatial, LorentzTransform};
use super::spinor::spinor_rep;
use super::MomentumSamples;
use crate::algebra::RealGammas;
use crate::linalg::{Mat4, Momentum3, RealBispinor};
use crate::{Error, Result};

fn nonzero(p: &Momentum3) -> Result<f64> {
    let n = p.norm();
    if n > 0.0 {
        Ok(n)
    } else {
        Err(Error::DegenerateMomentum)
    }
}

/// `N(p) = i(γ⁰|p| − γᵏpᵏ)`, real and nilpotent.
pub fn null_matrix(p: &Momentum3) -> Result<Mat4> {
    let n = nonzero(p)?;
    let g = RealGammas::paper();
    Ok(g.i_gamma[0] * n - g.i_gamma_dot(p))
}

/// `‖(γ⁰|p| − γᵏpᵏ)v‖`.
pub fn massless_constraint_residual(v: &RealBispinor, p: &Momentum3) -> Result<f64> {
    Ok((null_matrix(p)? * v).norm())
}

/// `v = i(γ⁰|p| − γᵏpᵏ)w`.
pub fn massless_potential(w: &RealBispinor, p: &Momentum3) -> Result<RealBispinor> {
    Ok(null_matrix(p)? * w)
}

/// `w + i(γ⁰|p| − γᵏpᵏ)χ`.
pub fn gauge_transform(
    w: &RealBispinor,
    chi: &RealBispinor,
    p: &Momentum3,
) -> Result<RealBispinor> {
    Ok(w + null_matrix(p)? * chi)
}

/// Gauge representatives `w±(p)` of a massless mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasslessPotential {
    pub p: Momentum3,
    pub w_plus: RealBispinor,
    pub w_minus: RealBispinor,
}

impl MasslessPotential {
    pub fn new(p: Momentum3, w_plus: RealBispinor, w_minus: RealBispinor) -> Result<Self> {
        nonzero(&p)?;
        Ok(MasslessPotential { p, w_plus, w_minus })
    }

    pub fn v_plus(&self) -> RealBispinor {
        massless_potential(&self.w_plus, &self.p).expect("p checked nonzero")
    }

    pub fn v_minus(&self) -> RealBispinor {
        massless_potential(&self.w_minus, &self.p).expect("p checked nonzero")
    }

    pub fn gauge_shifted(&self, chi_plus: &RealBispinor, chi_minus: &RealBispinor) -> Self {
        let n = null_matrix(&self.p).expect("p checked nonzero");
        MasslessPotential {
            p: self.p,
            w_plus: self.w_plus + n * chi_plus,
            w_minus: self.w_minus + n * chi_minus,
        }
    }
}

/// `γ⁰(γ⁰|p| − γᵏpᵏ) = |p| − γ⁰γᵏpᵏ`: symmetric, positive semi-definite,
/// rank 2.
pub fn massless_kernel(p: &Momentum3) -> Mat4 {
    Mat4::identity() * p.norm() - RealGammas::paper().gamma0_gamma_dot(p)
}

/// `2 Σ w/|p| [w̄₁₊(γ⁰|p| − γᵏpᵏ)w₂₊ + w̄₁₋(γ⁰|p| − γᵏpᵏ)w₂₋]`.
pub fn massless_scalar_product(
    samples: &MomentumSamples,
    w1_plus: &[RealBispinor],
    w2_plus: &[RealBispinor],
    w1_minus: &[RealBispinor],
    w2_minus: &[RealBispinor],
) -> Result<f64> {
    for len in [w1_plus.len(), w2_plus.len(), w1_minus.len(), w2_minus.len()] {
        samples.check_len(len)?;
    }
    let mut sum = 0.0;
    for (i, (p, w)) in samples.momenta.iter().zip(&samples.weights).enumerate() {
        let n = nonzero(p)?;
        let k = massless_kernel(p);
        sum += w / n * (w1_plus[i].dot(&(k * w2_plus[i])) + w1_minus[i].dot(&(k * w2_minus[i])));
    }
    Ok(2.0 * sum)
}

/// The bispinor basis at `p̊`: `e₁ = (1,−1,0,0)`, `e₂ = (0,0,1,−1)` are
/// physical, `e₃ = (1,1,0,0)`, `e₄ = (0,0,1,1)` span the gauge directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardBasisMassless {
    pub kappa: f64,
}

impl StandardBasisMassless {
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa > 0.0 {
            Ok(StandardBasisMassless { kappa })
        } else {
            Err(Error::DegenerateMomentum)
        }
    }

    pub fn vectors() -> [RealBispinor; 4] {
        [
            Vector4::new(1.0, -1.0, 0.0, 0.0),
            Vector4::new(0.0, 0.0, 1.0, -1.0),
            Vector4::new(1.0, 1.0, 0.0, 0.0),
            Vector4::new(0.0, 0.0, 1.0, 1.0),
        ]
    }

    /// Columns `e₁..e₄`.
    pub fn matrix() -> Mat4 {
        Mat4::from_columns(&Self::vectors())
    }

    pub fn momentum(&self) -> Momentum3 {
        Vector3::new(0.0, 0.0, self.kappa)
    }

    /// Gauge shift at `p̊`: `N(p̊)χ = κ(χ⁴ − χ³)e₃ + κ(χ² − χ¹)e₄`.
    pub fn gauge_shift(&self, chi: &RealBispinor) -> RealBispinor {
        let [_, _, e3, e4] = Self::vectors();
        (e3 * (chi[3] - chi[2]) + e4 * (chi[1] - chi[0])) * self.kappa
    }
}

/// Little-group data of `(L, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LittleGroupAction {
    pub element: LorentzTransform,
    /// `S(E) eᵢ = D_{ki} e_k`.
    pub d: Mat4,
}

impl LittleGroupAction {
    /// Block acting on the physical amplitudes `(c¹, c²)`.
    pub fn physical_block(&self) -> Matrix2<f64> {
        self.d.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// `max |D_{ki}|` over physical `k` and gauge `i`: pure gauge never
    /// leaks into physical amplitudes.
    pub fn gauge_leak(&self) -> f64 {
        crate::linalg::max_abs(&self.d.fixed_view::<2, 2>(0, 2).into_owned())
    }

    /// Action on `z = c¹ + ic²`, valid when the physical block is a rotation.
    pub fn phase(&self) -> Complex64 {
        let b = self.physical_block();
        Complex64::new(b[(0, 0)], b[(1, 0)])
    }
}

/// `D` in the `e`-basis for an arbitrary spinor transform.
pub fn d_matrix(s: &Mat4) -> Mat4 {
    let e = StandardBasisMassless::matrix();
    // e columns are orthogonal with norm √2
    e.transpose() * s * e * 0.5
}

pub fn little_group_massless(
    l: &LorentzTransform,
    p: &Momentum3,
    kappa: f64,
) -> Result<LittleGroupAction> {
    let element = little_group_element(l, p, kappa)?;
    Ok(LittleGroupAction {
        element,
        d: d_matrix(&spinor_rep(&element).matrix),
    })
}

/// Amplitudes `c` of `w₊(p) = S(H₀(p)) Σ c^k e_k`.
pub fn massless_amplitude(p: &Momentum3, kappa: f64, w: &RealBispinor) -> Result<RealBispinor> {
    let h = spinor_rep(&massless_boost(p, kappa)?);
    let e_inv = StandardBasisMassless::matrix().transpose() * 0.5;
    Ok(e_inv * h.inverse()?.matrix * w)
}

/// `Lp` for the null four-momentum `(|p|, p)`.
pub fn transform_null(l: &LorentzTransform, p: &Momentum3) -> Momentum3 {
    spatial(&l.apply(&Vector4::new(p.norm(), p[0], p[1], p[2])))
}

/// Amplitude law `c′(p′) = D(E(L, p′)) c(L⁻¹p′)` at the moved momenta.
pub fn transform_massless_amplitudes(
    l: &LorentzTransform,
    momenta: &[Momentum3],
    c: &[RealBispinor],
    kappa: f64,
) -> Result<(Vec<Momentum3>, Vec<RealBispinor>)> {
    if momenta.len() != c.len() {
        return Err(Error::LengthMismatch(momenta.len(), c.len()));
    }
    let mut moved = Vec::with_capacity(c.len());
    let mut out = Vec::with_capacity(c.len());
    for (p, x) in momenta.iter().zip(c) {
        let q = transform_null(l, p);
        let act = little_group_massless(l, &q, kappa)?;
        moved.push(q);
        out.push(act.d * x);
    }
    Ok((moved, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, rank};

    #[test]
    fn null_matrix_at_standard_momentum() {
        let k = 1.7;
        let n = null_matrix(&Vector3::new(0.0, 0.0, k)).unwrap() / k;
        #[rustfmt::skip]
        let expect = Mat4::new(
            0.0, 0.0, -1.0, 1.0,
            0.0, 0.0, -1.0, 1.0,
            -1.0, 1.0, 0.0, 0.0,
            -1.0, 1.0, 0.0, 0.0,
        );
        assert!(max_abs(&(n - expect)) < 1e-15);
        let chi = RealBispinor::new(0.3, -1.1, 2.0, 0.25);
        let basis = StandardBasisMassless::new(k).unwrap();
        let direct = null_matrix(&basis.momentum()).unwrap() * chi;
        assert!((direct - basis.gauge_shift(&chi)).norm() < 1e-14);
    }

    #[test]
    fn nilpotent_rank_two() {
        let p = Vector3::new(0.2, -1.4, 0.9);
        let n = null_matrix(&p).unwrap();
        assert!(max_abs(&(n * n)) < 1e-14);
        assert_eq!(rank(&n, 1e-10), 2);
        assert!(null_matrix(&Vector3::zeros()).is_err());
    }

    #[test]
    fn third_axis_rotation_block() {
        let k = 1.0;
        let th = 1.2_f64;
        let l = LorentzTransform::rotation(&Vector3::z(), th);
        let act = little_group_massless(&l, &Vector3::new(0.0, 0.0, k), k).unwrap();
        let (c, s) = ((th / 2.0).cos(), (th / 2.0).sin());
        let b = act.physical_block();
        assert!((b - Matrix2::new(c, -s, s, c)).norm() < 1e-14);
        assert!((act.phase() - Complex64::from_polar(1.0, th / 2.0)).norm() < 1e-14);
        assert!(act.gauge_leak() < 1e-14);
    }
}
