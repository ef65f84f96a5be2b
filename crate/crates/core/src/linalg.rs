//! Small fixed-size matrix types shared by all modules.

use core::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Matrix4, SMatrix, Vector2, Vector3, Vector4};
use num_complex::Complex64;

pub type Mat4 = Matrix4<f64>;
pub type Mat8 = SMatrix<f64, 8, 8>;

/// Four real components; the wave-function value in the real formulation.
pub type RealBispinor = Vector4<f64>;
/// Four complex components; the Dirac-representation wave-function value.
pub type ComplexBispinor = Vector4<Complex64>;
/// Upper half of a Majorana bispinor in the Dirac representation.
pub type TwoSpinor = Vector2<Complex64>;
/// Spatial momentum, inverse length units.
pub type Momentum3 = Vector3<f64>;

/// A 4×4 complex matrix stored as separate real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4 {
    pub re: Mat4,
    pub im: Mat4,
}

impl ComplexMatrix4 {
    pub fn zero() -> Self {
        Self {
            re: Mat4::zeros(),
            im: Mat4::zeros(),
        }
    }

    pub fn identity() -> Self {
        Self::real(Mat4::identity())
    }

    pub fn real(re: Mat4) -> Self {
        Self {
            re,
            im: Mat4::zeros(),
        }
    }

    pub fn imag(im: Mat4) -> Self {
        Self {
            re: Mat4::zeros(),
            im,
        }
    }

    /// Build from row-major complex entries.
    pub fn from_rows(rows: [[Complex64; 4]; 4]) -> Self {
        Self {
            re: Mat4::from_fn(|r, c| rows[r][c].re),
            im: Mat4::from_fn(|r, c| rows[r][c].im),
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        Complex64::new(self.re[(r, c)], self.im[(r, c)])
    }

    pub fn to_complex(&self) -> Matrix4<Complex64> {
        Matrix4::from_fn(|r, c| self.entry(r, c))
    }

    pub fn from_complex(m: &Matrix4<Complex64>) -> Self {
        Self {
            re: m.map(|z| z.re),
            im: m.map(|z| z.im),
        }
    }

    /// Multiply by the imaginary unit.
    pub fn times_i(&self) -> Self {
        Self {
            re: -self.im,
            im: self.re,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            re: self.re * s,
            im: self.im * s,
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            re: self.re.transpose(),
            im: self.im.transpose(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            re: self.re.transpose(),
            im: -self.im.transpose(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn apply(&self, v: &ComplexBispinor) -> ComplexBispinor {
        self.to_complex() * v
    }

    /// Largest absolute entry of either part.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.re).max(max_abs(&self.im))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for ComplexMatrix4 {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Largest absolute entry of a real matrix.
pub fn max_abs<const R: usize, const C: usize>(m: &SMatrix<f64, R, C>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Numerical rank from singular values, relative threshold `rel_tol`.
pub fn rank<const R: usize, const C: usize>(m: &SMatrix<f64, R, C>, rel_tol: f64) -> usize {
    let dynamic = DMatrix::from_column_slice(R, C, m.as_slice());
    singular_values(&dynamic)
        .map(|sv| {
            let top = sv.iter().fold(0.0f64, |a, &s| a.max(s));
            if top == 0.0 {
                0
            } else {
                sv.iter().filter(|&&s| s > rel_tol * top).count()
            }
        })
        .unwrap_or(0)
}

/// Singular values of a dense matrix, descending.
pub fn singular_values(m: &DMatrix<f64>) -> Option<alloc::vec::Vec<f64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return None;
    }
    let mut sv: alloc::vec::Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Some(sv)
}

/// Complex conjugate of every component.
pub fn conj4(v: &ComplexBispinor) -> ComplexBispinor {
    v.map(|z| z.conj())
}

/// Largest modulus among the components.
pub fn max_abs_c(v: &ComplexBispinor) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}
