//! Proper orthochronous Lorentz transforms, signature (+,−,−,−).

use core::ops::Mul;

use nalgebra::{Matrix3, Vector3, Vector4};
use num_traits::Float;

use crate::linalg::{max_abs, Mat4, Momentum3};
use crate::{Error, Result};

/// Contravariant components `(p⁰, p¹, p², p³)`.
pub type FourVector = Vector4<f64>;

pub fn metric() -> Mat4 {
    Mat4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// `a⁰b⁰ − a·b`.
pub fn minkowski(a: &FourVector, b: &FourVector) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// `(√(m² + p²), p)`.
pub fn on_shell(p: &Momentum3, m: f64) -> FourVector {
    let e = (m * m + p.norm_squared()).sqrt();
    Vector4::new(e, p[0], p[1], p[2])
}

pub fn spatial(p: &FourVector) -> Momentum3 {
    Vector3::new(p[1], p[2], p[3])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform {
    pub matrix: Mat4,
}

impl LorentzTransform {
    /// Validates `LᵀηL = η`, `det L = 1` and `L⁰₀ ≥ 1`.
    pub fn new(matrix: Mat4) -> Result<Self> {
        let l = LorentzTransform { matrix };
        let residual = l.orthogonality_residual();
        let scale = max_abs(&matrix).max(1.0);
        if residual > 1e-10 * scale * scale
            || matrix[(0, 0)] < 1.0 - 1e-12
            || matrix.determinant() < 0.0
        {
            return Err(Error::NotLorentz { residual });
        }
        Ok(l)
    }

    pub fn identity() -> Self {
        LorentzTransform {
            matrix: Mat4::identity(),
        }
    }

    /// Pure boost along unit `n` with rapidity `eta`: maps `e₀` to
    /// `(cosh η, sinh η·n)`.
    pub fn boost(n: &Vector3<f64>, eta: f64) -> Self {
        let n = n.normalize();
        let (ch, sh) = (eta.cosh(), eta.sinh());
        let mut m = Mat4::identity();
        m[(0, 0)] = ch;
        for i in 0..3 {
            m[(0, i + 1)] = sh * n[i];
            m[(i + 1, 0)] = sh * n[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] += (ch - 1.0) * n[i] * n[j];
            }
        }
        LorentzTransform { matrix: m }
    }

    /// Pure boost taking `e₀` to the four-velocity `u` (`u⁰ ≥ 1`, `u² = 1`).
    pub fn boost_to_velocity(u: &FourVector) -> Self {
        let s = spatial(u);
        let mut m = Mat4::identity();
        m[(0, 0)] = u[0];
        for i in 0..3 {
            m[(0, i + 1)] = s[i];
            m[(i + 1, 0)] = s[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] += s[i] * s[j] / (1.0 + u[0]);
            }
        }
        LorentzTransform { matrix: m }
    }

    /// Counterclockwise rotation by `angle` about `axis`.
    pub fn rotation(axis: &Vector3<f64>, angle: f64) -> Self {
        let r = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(*axis), angle);
        Self::from_rotation(r.matrix())
    }

    pub fn from_rotation(r: &Matrix3<f64>) -> Self {
        let mut m = Mat4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(r);
        LorentzTransform { matrix: m }
    }

    /// Boost with rapidity vector `b` (direction and magnitude) after a
    /// rotation with rotation vector `r`.
    pub fn from_parameters(b: &Vector3<f64>, r: &Vector3<f64>) -> Self {
        let boost = if b.norm() > 0.0 {
            Self::boost(b, b.norm())
        } else {
            Self::identity()
        };
        let rot = if r.norm() > 0.0 {
            Self::rotation(r, r.norm())
        } else {
            Self::identity()
        };
        boost * rot
    }

    /// `η Lᵀ η`.
    pub fn inverse(&self) -> Self {
        let eta = metric();
        LorentzTransform {
            matrix: eta * self.matrix.transpose() * eta,
        }
    }

    pub fn apply(&self, p: &FourVector) -> FourVector {
        self.matrix * p
    }

    /// `‖LᵀηL − η‖_max`.
    pub fn orthogonality_residual(&self) -> f64 {
        let eta = metric();
        max_abs(&(self.matrix.transpose() * eta * self.matrix - eta))
    }

    /// Spatial 3×3 block.
    pub fn spatial_block(&self) -> Matrix3<f64> {
        self.matrix.fixed_view::<3, 3>(1, 1).into_owned()
    }

    /// Distance from a pure spatial rotation: the size of the time-space
    /// mixing plus the orthogonality defect of the spatial block.
    pub fn rotation_residual(&self) -> f64 {
        let m = &self.matrix;
        let mut mix = (m[(0, 0)] - 1.0).abs();
        for i in 1..4 {
            mix = mix.max(m[(0, i)].abs()).max(m[(i, 0)].abs());
        }
        let r = self.spatial_block();
        mix.max(max_abs(&(r.transpose() * r - Matrix3::identity())))
    }

    /// `L = B·R` with `B` the pure boost to `L e₀` and `R` a rotation.
    pub fn polar(&self) -> (LorentzTransform, LorentzTransform) {
        let u: FourVector = self.matrix.column(0).into_owned();
        let b = Self::boost_to_velocity(&u);
        let r = b.inverse() * *self;
        // clean the exact zeros the rotation must have
        let mut rm = Mat4::identity();
        rm.fixed_view_mut::<3, 3>(1, 1)
            .copy_from(&r.spatial_block());
        (b, LorentzTransform { matrix: rm })
    }
}

impl Mul for LorentzTransform {
    type Output = LorentzTransform;
    fn mul(self, rhs: Self) -> Self {
        LorentzTransform {
            matrix: self.matrix * rhs.matrix,
        }
    }
}

fn check_shell(p: &FourVector, m: f64) -> Result<()> {
    let residual = minkowski(p, p) - m * m;
    if residual.abs() > 1e-10 * p[0].abs().max(1.0).powi(2) || p[0] <= 0.0 {
        return Err(Error::OffShell { residual });
    }
    Ok(())
}

/// The pure boost `H(p)` with `H(p)(m,0,0,0)ᵀ = p`.
pub fn boost_to(p: &FourVector, m: f64) -> Result<LorentzTransform> {
    if !(m > 0.0) {
        return Err(Error::NonPositiveMass(m));
    }
    check_shell(p, m)?;
    Ok(LorentzTransform::boost_to_velocity(&(p / m)))
}

/// `R(L, p) = H⁻¹(p) L H(L⁻¹p)`; fixes `(m,0,0,0)ᵀ`.
pub fn wigner_rotation(l: &LorentzTransform, p: &FourVector, m: f64) -> Result<LorentzTransform> {
    let h = boost_to(p, m)?;
    let back = l.inverse().apply(p);
    let h_back = boost_to(&back, m)?;
    Ok(h.inverse() * *l * h_back)
}

/// Standard light-like momentum `(κ, 0, 0, κ)`.
pub fn standard_null(kappa: f64) -> FourVector {
    Vector4::new(kappa, 0.0, 0.0, kappa)
}

/// `H₀(p)`: the z-boost rescaling `κ → |p|`, then the rotation in the plane
/// of `e₃` and `p̂` taking `e₃` to `p̂` (a half-turn about axis 1 when
/// `p̂ = −e₃`).
pub fn massless_boost(p: &Momentum3, kappa: f64) -> Result<LorentzTransform> {
    let norm = p.norm();
    if !(norm > 0.0) || !(kappa > 0.0) {
        return Err(Error::DegenerateMomentum);
    }
    let boost = LorentzTransform::boost(&Vector3::z(), (norm / kappa).ln());
    let n = p / norm;
    let axis = Vector3::z().cross(&n);
    let s = axis.norm();
    let rot = if s < 1e-15 {
        if n[2] > 0.0 {
            LorentzTransform::identity()
        } else {
            LorentzTransform::rotation(&Vector3::x(), core::f64::consts::PI)
        }
    } else {
        LorentzTransform::rotation(&axis, s.atan2(n[2]))
    };
    Ok(rot * boost)
}

/// `E(L, p) = H₀⁻¹(p) L H₀(L⁻¹p)`; fixes `(κ,0,0,κ)ᵀ`.
pub fn little_group_element(
    l: &LorentzTransform,
    p: &Momentum3,
    kappa: f64,
) -> Result<LorentzTransform> {
    let h = massless_boost(p, kappa)?;
    let four = Vector4::new(p.norm(), p[0], p[1], p[2]);
    let back = spatial(&l.inverse().apply(&four));
    let h_back = massless_boost(&back, kappa)?;
    Ok(h.inverse() * *l * h_back)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_boost_matches_textbook_form() {
        let (m, q) = (1.3_f64, 2.1_f64);
        let p = Vector4::new((m * m + q * q).sqrt(), 0.0, 0.0, q);
        let h = boost_to(&p, m).unwrap();
        let ch = p[0] / m;
        let sh = q / m;
        let mut expect = Mat4::identity();
        expect[(0, 0)] = ch;
        expect[(3, 3)] = ch;
        expect[(0, 3)] = sh;
        expect[(3, 0)] = sh;
        assert!(max_abs(&(h.matrix - expect)) < 1e-14);
    }

    #[test]
    fn off_shell_is_rejected() {
        assert!(matches!(
            boost_to(&Vector4::new(2.0, 0.0, 0.0, 1.0), 1.0),
            Err(Error::OffShell { .. })
        ));
        assert!(boost_to(&Vector4::new(1.0, 0.0, 0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn massless_boost_examples() {
        let k = 0.7;
        let id = massless_boost(&Vector3::new(0.0, 0.0, k), k).unwrap();
        assert!(max_abs(&(id.matrix - Mat4::identity())) < 1e-15);
        let b = massless_boost(&Vector3::new(0.0, 0.0, 2.0 * k), k).unwrap();
        assert!(
            max_abs(&(b.matrix - LorentzTransform::boost(&Vector3::z(), 2f64.ln()).matrix)) < 1e-14
        );
        let down = massless_boost(&Vector3::new(0.0, 0.0, -3.0), k).unwrap();
        assert!((down.apply(&standard_null(k)) - Vector4::new(3.0, 0.0, 0.0, -3.0)).norm() < 1e-14);
        assert!(massless_boost(&Vector3::zeros(), k).is_err());
    }

    #[test]
    fn polar_factors_recombine() {
        let l = LorentzTransform::from_parameters(
            &Vector3::new(0.3, -1.1, 0.4),
            &Vector3::new(1.0, 0.2, -2.0),
        );
        let (b, r) = l.polar();
        assert!(max_abs(&((b * r).matrix - l.matrix)) < 1e-13);
        assert!(r.rotation_residual() < 1e-13);
        assert!(max_abs(&(b.matrix - b.matrix.transpose())) < 1e-15);
        assert!(LorentzTransform::new(l.matrix).is_ok());
        assert!(LorentzTransform::new(Mat4::identity() * 2.0).is_err());
    }
}
