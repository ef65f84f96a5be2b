//! Real spinor representatives `S(L)` with `S⁻¹γ^μS = L^μ_ν γ^ν`.

use core::ops::Mul;

use nalgebra::{Matrix3, Rotation3, UnitQuaternion, Vector3};
use num_traits::Float;

use super::lorentz::LorentzTransform;
use crate::algebra::RealGammas;
use crate::linalg::{max_abs, Mat4};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorTransform {
    pub matrix: Mat4,
}

impl SpinorTransform {
    pub fn identity() -> Self {
        SpinorTransform {
            matrix: Mat4::identity(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        self.matrix
            .try_inverse()
            .map(|matrix| SpinorTransform { matrix })
            .ok_or(Error::Internal("singular spinor transform"))
    }

    /// Max over μ of `‖S⁻¹γ^μS − L^μ_ν γ^ν‖_max`, evaluated on the real
    /// matrices `iγ^μ`.
    pub fn intertwining_residual(&self, l: &LorentzTransform) -> f64 {
        let g = RealGammas::paper();
        let Some(inv) = self.matrix.try_inverse() else {
            return f64::INFINITY;
        };
        (0..4)
            .map(|mu| {
                let lhs = inv * g.i_gamma[mu] * self.matrix;
                let rhs = (0..4).fold(Mat4::zeros(), |acc, nu| {
                    acc + g.i_gamma[nu] * l.matrix[(mu, nu)]
                });
                max_abs(&(lhs - rhs))
            })
            .fold(0.0, f64::max)
    }
}

impl Mul for SpinorTransform {
    type Output = SpinorTransform;
    fn mul(self, rhs: Self) -> Self {
        SpinorTransform {
            matrix: self.matrix * rhs.matrix,
        }
    }
}

/// `γ²γ³, γ³γ¹, γ¹γ²`, the real rotation generators (each squares to −I).
pub fn rotation_generators() -> [Mat4; 3] {
    let g = RealGammas::paper();
    // γ^jγ^k = −(iγ^j)(iγ^k)
    let pair = |j: usize, k: usize| -(g.i_gamma[j] * g.i_gamma[k]);
    [pair(2, 3), pair(3, 1), pair(1, 2)]
}

/// `w I + x γ²γ³ + y γ³γ¹ + z γ¹γ²` for the quaternion `(w, x, y, z)`.
pub fn spinor_from_quaternion(q: [f64; 4]) -> SpinorTransform {
    let [a1, a2, a3] = rotation_generators();
    SpinorTransform {
        matrix: Mat4::identity() * q[0] + a1 * q[1] + a2 * q[2] + a3 * q[3],
    }
}

/// `cos(θ/2) + sin(θ/2)(n₁γ²γ³ + n₂γ³γ¹ + n₃γ¹γ²)`; not reduced mod 2π,
/// so `θ = 2π` gives `−I`.
pub fn rotation_spinor(axis: &Vector3<f64>, angle: f64) -> SpinorTransform {
    let n = axis.normalize();
    let (s, c) = (angle / 2.0).sin_cos();
    spinor_from_quaternion([c, s * n[0], s * n[1], s * n[2]])
}

/// `cosh(η/2) + sinh(η/2) nₖγ⁰γᵏ`.
pub fn boost_spinor(axis: &Vector3<f64>, eta: f64) -> SpinorTransform {
    let n = axis.normalize();
    let g = RealGammas::paper();
    let (c, s) = ((eta / 2.0).cosh(), (eta / 2.0).sinh());
    SpinorTransform {
        matrix: Mat4::identity() * c + g.gamma0_gamma_dot(&n) * s,
    }
}

/// Unit quaternion of a rotation matrix, with `w ≥ 0`; on the `w = 0`
/// boundary the first nonzero vector component is made positive.
pub fn rotation_quaternion(r: &Matrix3<f64>) -> Result<[f64; 4]> {
    let residual =
        max_abs(&(r.transpose() * r - Matrix3::identity())).max((r.determinant() - 1.0).abs());
    if residual > 1e-9 {
        return Err(Error::NotRotation { residual });
    }
    let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*r));
    let mut v = [q.w, q.i, q.j, q.k];
    let flip = if v[0].abs() > 1e-15 {
        v[0] < 0.0
    } else {
        v[1..]
            .iter()
            .find(|x| x.abs() > 1e-15)
            .is_some_and(|x| *x < 0.0)
    };
    if flip {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(v)
}

/// `S(L) = S(B)·S(R)` from the polar factorization `L = B·R`.
pub fn spinor_rep(l: &LorentzTransform) -> SpinorTransform {
    let (b, r) = l.polar();
    let u = b.matrix.column(0);
    let s = Vector3::new(u[1], u[2], u[3]);
    let sb = if s.norm() > 0.0 {
        boost_spinor(&s, s.norm().asinh())
    } else {
        SpinorTransform::identity()
    };
    let q = rotation_quaternion(&r.spatial_block()).unwrap_or([1.0, 0.0, 0.0, 0.0]);
    sb * spinor_from_quaternion(q)
}
