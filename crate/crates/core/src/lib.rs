//! Relativistic quantum mechanics of the free Majorana particle, at desk scale.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`algebra`]: gamma-matrix representations, charge conjugation, and the
//!   Dirac / two-component / real-bispinor formulations.
//! - [`axial`]: the axial momentum `-i γ₅ ∇`, its plane waves, the helicity
//!   basis, and Heisenberg-picture evolution restricted to a `±p` mode pair.
//! - [`grid`] and [`solver`]: periodic-box fields, spectral derivatives, the
//!   closed-form mode expansion and an independent RK4 integrator.
//! - [`poincare`]: Lorentz and spinor transforms, Wigner rotations, the real
//!   form of SU(2), and the massless spinorial gauge structure.
//!
//! All wave functions in the axial/solver/poincare modules are real bispinors
//! in the imaginary gamma representation returned by
//! [`algebra::make_gamma`]`(RepName::MajoranaPaper)`.
#![no_std]
#![warn(missing_debug_implementations)]
// Float supplies libm-backed math under no_std; it is shadowed whenever a
// dependent enables num-traits/std.
#![allow(unused_imports)]
// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod algebra;
pub mod axial;
mod error;
pub mod fft;
pub mod grid;
pub mod linalg;
pub mod poincare;
pub mod solver;

pub use error::{Error, Result};
