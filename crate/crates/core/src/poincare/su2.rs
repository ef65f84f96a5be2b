//! The real form of the spin-½ representation of SU(2) and the orthogonal
//! matrix carrying rotation spinors onto it.

use alloc::boxed::Box;

use nalgebra::{DMatrix, DVector, Matrix2, Matrix3, SymmetricEigen};
use num_complex::Complex64;
use num_traits::Float;
use once_cell::race::OnceBox;

use super::spinor::{
    rotation_generators, rotation_quaternion, spinor_from_quaternion, SpinorTransform,
};
use crate::linalg::{max_abs, Mat4};
use crate::{Error, Result};

/// `u = [[α, −β], [β*, α*]]`.
pub fn su2_matrix(alpha: Complex64, beta: Complex64) -> Matrix2<Complex64> {
    Matrix2::new(alpha, -beta, beta.conj(), alpha.conj())
}

/// `(α, β)` read back from a matrix of the `su2_matrix` form.
pub fn su2_parameters(u: &Matrix2<Complex64>) -> (Complex64, Complex64) {
    (u[(0, 0)], -u[(0, 1)])
}

fn t_hat_unchecked(alpha: Complex64, beta: Complex64) -> Mat4 {
    let (a1, a2, b1, b2) = (alpha.re, alpha.im, beta.re, beta.im);
    #[rustfmt::skip]
    let t = Mat4::new(
        a1, -a2, -b1, b2,
        a2, a1, -b2, -b1,
        b1, b2, a1, a2,
        -b2, b1, -a2, a1,
    );
    t
}

/// `T̂(u)`: the matrix acting on `(ξ₁′, ξ₁″, ξ₂′, ξ₂″)` as `u` acts on `ξ`.
pub fn su2_real_form(alpha: Complex64, beta: Complex64) -> Result<Mat4> {
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnitary { norm_sq });
    }
    Ok(t_hat_unchecked(alpha, beta))
}

/// Quaternion `(w, x, y, z)` to `(α, β) = (w − iz, y + ix)`, the lift
/// `u = exp(−iθ n·σ/2)`.
pub fn quaternion_to_su2(q: [f64; 4]) -> (Complex64, Complex64) {
    (Complex64::new(q[0], -q[3]), Complex64::new(q[2], q[1]))
}

/// Deterministic SU(2) lift of a rotation matrix (angle in `[0, π]`).
pub fn rotation_to_su2(r: &Matrix3<f64>) -> Result<(Complex64, Complex64)> {
    Ok(quaternion_to_su2(rotation_quaternion(r)?))
}

fn intertwiner_system() -> DMatrix<f64> {
    let gens = rotation_generators();
    let basis = [
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    let mut sys = DMatrix::zeros(48, 16);
    for (a, (g, q)) in gens.iter().zip(basis).enumerate() {
        let (alpha, beta) = quaternion_to_su2(q);
        let t = t_hat_unchecked(alpha, beta);
        // vec(O G − T O) = (Gᵀ ⊗ I − I ⊗ T) vec(O), column-major vec
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let mut v = 0.0;
                        if i == k {
                            v += g[(l, j)];
                        }
                        if j == l {
                            v -= t[(i, k)];
                        }
                        sys[(16 * a + i + 4 * j, k + 4 * l)] = v;
                    }
                }
            }
        }
    }
    sys
}

fn compute_intertwiner() -> Result<Mat4> {
    let sys = intertwiner_system();
    let gram = sys.transpose() * &sys;
    let eig = SymmetricEigen::new(gram);
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let null: alloc::vec::Vec<DVector<f64>> = (0..16)
        .filter(|&k| eig.eigenvalues[k].abs() <= 1e-12 * top)
        .map(|k| eig.eigenvectors.column(k).into_owned())
        .collect();
    if null.is_empty() {
        return Err(Error::Internal("empty intertwiner nullspace"));
    }
    // Projection of a fixed seed vector onto the nullspace does not depend
    // on the eigenvector basis the solver happened to return.
    let project = |seed: &DVector<f64>| {
        null.iter()
            .fold(DVector::zeros(16), |acc, n| acc + n * n.dot(seed))
    };
    let mut seeds = (0..17).map(|s| {
        if s == 0 {
            DVector::from_column_slice(Mat4::identity().as_slice())
        } else {
            let mut e = DVector::zeros(16);
            e[s - 1] = 1.0;
            e
        }
    });
    let vec = seeds
        .find_map(|s| {
            let p = project(&s);
            (p.norm() > 1e-6).then_some(p)
        })
        .ok_or(Error::Internal("intertwiner projection vanished"))?;
    let o = Mat4::from_column_slice(vec.as_slice());
    let c = (o.transpose() * o).trace() / 4.0;
    let o = o / c.sqrt();
    if max_abs(&(o.transpose() * o - Mat4::identity())) > 1e-12 {
        return Err(Error::Internal("intertwiner is not orthogonal"));
    }
    Ok(o)
}

static INTERTWINER: OnceBox<Mat4> = OnceBox::new();

/// Real orthogonal `O` with `O S(R) O⁻¹ = T̂(u(R))` for every rotation.
/// Computed once from the generator intertwining equations.
pub fn intertwiner_o() -> Result<&'static Mat4> {
    if let Some(o) = INTERTWINER.get() {
        return Ok(o);
    }
    let o = compute_intertwiner()?;
    Ok(INTERTWINER.get_or_init(|| Box::new(o)))
}

/// `max ‖O S O⁻¹ − s·T̂‖` minimized over the global sign `s = ±1`.
pub fn conjugation_residual(s: &SpinorTransform, alpha: Complex64, beta: Complex64) -> Result<f64> {
    let o = intertwiner_o()?;
    let lhs = o * s.matrix * o.transpose();
    let t = su2_real_form(alpha, beta)?;
    Ok(max_abs(&(lhs - t)).min(max_abs(&(lhs + t))))
}

/// Spinor for the quaternion lifted to SU(2) by [`quaternion_to_su2`].
pub fn spinor_for_su2(alpha: Complex64, beta: Complex64) -> SpinorTransform {
    spinor_from_quaternion([alpha.re, beta.im, beta.re, -alpha.im])
}
