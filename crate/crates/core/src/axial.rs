//! Axial momentum `p̂₅ = −iγ₅∇`: plane waves, the helicity basis and the
//! Heisenberg-picture evolution on a `±p` mode pair.
//!
//! A pair operator acts on `f = e^{iγ₅p·x}v + e^{−iγ₅p·x}w`, represented by
//! the stacked real vector `(v, w)`. Because `γ₅` and `γ⁰` are imaginary,
//! operators containing them are stored through their real multiples:
//! [`gamma5_heisenberg`] returns `iγ₅(t)`.

use alloc::vec::Vec;

use nalgebra::{Matrix4, Vector3};
use num_traits::Float;

use crate::algebra::RealGammas;
use crate::grid::{gradient, BispinorField, BoxGrid};
use crate::linalg::{max_abs, Mat4, Mat8, Momentum3, RealBispinor};
use crate::poincare::spinor::rotation_spinor;
use crate::{Error, Result};

/// `(2π)^{−3/2}`.
pub const CONTINUUM_NORM: f64 = 0.063_493_635_934_240_97;

/// `cos(p·x) I + sin(p·x) iγ₅`, an orthogonal matrix.
pub fn axial_exponential(p: &Momentum3, x: &Vector3<f64>) -> Mat4 {
    let (s, c) = p.dot(x).sin_cos();
    Mat4::identity() * c + RealGammas::paper().i_gamma5() * s
}

fn check_unit(v: &RealBispinor) -> Result<()> {
    let norm_sq = v.norm_squared();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// `ψ_p(x) = (2π)^{−3/2} e^{iγ₅p·x} v`, `vᵀv = 1`.
pub fn plane_wave(p: &Momentum3, v: &RealBispinor, x: &Vector3<f64>) -> Result<RealBispinor> {
    check_unit(v)?;
    Ok(axial_exponential(p, x) * v * CONTINUUM_NORM)
}

/// Box-normalized plane wave `L^{−d/2} e^{iγ₅p·x} v` sampled on the grid;
/// lattice plane waves are Kronecker-orthonormal.
pub fn plane_wave_field(grid: &BoxGrid, p: &Momentum3, v: &RealBispinor) -> Result<BispinorField> {
    check_unit(v)?;
    let norm = grid.mode_normalization();
    Ok(BispinorField::from_fn(grid, |x| {
        axial_exponential(p, x) * v * norm
    }))
}

/// `p̂₅ʲψ = −iγ₅∂ⱼψ` for j = 1, 2, 3 (spectral derivatives).
pub fn axial_momentum_apply(field: &BispinorField) -> [BispinorField; 3] {
    let m = -*RealGammas::paper().i_gamma5();
    gradient(field).map(|d| d.map_matrix(&m))
}

/// Eigenvectors of `γ⁰γᵏpᵏ`: `v₁±, v₂± = iγ₅v₁±` with eigenvalue `±|p|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicityBasis {
    pub p: Momentum3,
    pub v1_plus: RealBispinor,
    pub v2_plus: RealBispinor,
    pub v1_minus: RealBispinor,
    pub v2_minus: RealBispinor,
}

impl HelicityBasis {
    /// `[v₁⁺, v₂⁺, v₁⁻, v₂⁻]`.
    pub fn vectors(&self) -> [RealBispinor; 4] {
        [self.v1_plus, self.v2_plus, self.v1_minus, self.v2_minus]
    }

    /// Orthogonal matrix with the basis as columns.
    pub fn matrix(&self) -> Mat4 {
        Matrix4::from_columns(&self.vectors())
    }

    /// `‖VᵀV − I‖_max`.
    pub fn orthonormality_residual(&self) -> f64 {
        let v = self.matrix();
        max_abs(&(v.transpose() * v - Mat4::identity()))
    }

    /// Max over the four vectors of `‖γ⁰γᵏpᵏv − E₀v‖`, `E₀ = ±|p|`.
    pub fn eigen_residual(&self) -> f64 {
        let h = RealGammas::paper().gamma0_gamma_dot(&self.p);
        let n = self.p.norm();
        self.vectors()
            .iter()
            .zip([n, n, -n, -n])
            .map(|(v, e)| (h * v - v * e).norm())
            .fold(0.0, f64::max)
    }
}

fn closed_form_v1_plus(p: &Momentum3) -> RealBispinor {
    let n = p.norm();
    // |p| − p² without cancellation when p² > 0
    let gap = if p[1] > 0.0 {
        (p[0] * p[0] + p[2] * p[2]) / (n + p[1])
    } else {
        n - p[1]
    };
    RealBispinor::new(-p[2], -gap, p[0], 0.0) / (2.0 * n * gap).sqrt()
}

fn complete(p: Momentum3, v1_plus: RealBispinor) -> HelicityBasis {
    let g = RealGammas::paper();
    let ig5 = g.i_gamma5();
    let v1_minus = g.i_gamma[0] * v1_plus;
    HelicityBasis {
        p,
        v1_plus,
        v2_plus: ig5 * v1_plus,
        v1_minus,
        v2_minus: ig5 * v1_minus,
    }
}

/// Helicity basis at `p ≠ 0`. When `p` lies within `10⁻⁶` (relative) of
/// the `+e₂` axis the closed form is applied at `R⁻¹p`, with `R` the
/// quarter turn about axis 1 taking `e₂` to `e₃`, and rotated back by `S(R)`.
pub fn helicity_basis(p: &Momentum3) -> Result<HelicityBasis> {
    let n = p.norm();
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::DegenerateMomentum);
    }
    let transverse = (p[0] * p[0] + p[2] * p[2]).sqrt();
    if p[1] > 0.0 && transverse < 1e-6 * n {
        // R⁻¹(p¹, p², p³) = (p¹, p³, −p²)
        let q = Vector3::new(p[0], p[2], -p[1]);
        let s = rotation_spinor(&Vector3::x(), core::f64::consts::FRAC_PI_2).matrix;
        let b = complete(q, closed_form_v1_plus(&q));
        return Ok(HelicityBasis {
            p: *p,
            v1_plus: s * b.v1_plus,
            v2_plus: s * b.v2_plus,
            v1_minus: s * b.v1_minus,
            v2_minus: s * b.v2_minus,
        });
    }
    Ok(complete(*p, closed_form_v1_plus(p)))
}

/// A real linear operator on the span of `e^{iγ₅p·x}v` and `e^{−iγ₅p·x}w`,
/// as an 8×8 matrix on `(v, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairOperator {
    pub p: Momentum3,
    pub m: f64,
    pub matrix: Mat8,
}

impl PairOperator {
    pub fn apply(&self, v: &RealBispinor, w: &RealBispinor) -> (RealBispinor, RealBispinor) {
        let x = nalgebra::SVector::<f64, 8>::from_iterator(v.iter().chain(w.iter()).copied());
        let y = self.matrix * x;
        (
            y.fixed_rows::<4>(0).into_owned(),
            y.fixed_rows::<4>(4).into_owned(),
        )
    }
}

fn block_diag(a: &Mat4, b: &Mat4) -> Mat8 {
    let mut m = Mat8::zeros();
    m.fixed_view_mut::<4, 4>(0, 0).copy_from(a);
    m.fixed_view_mut::<4, 4>(4, 4).copy_from(b);
    m
}

fn block_swap(a: &Mat4) -> Mat8 {
    let mut m = Mat8::zeros();
    m.fixed_view_mut::<4, 4>(0, 4).copy_from(a);
    m.fixed_view_mut::<4, 4>(4, 0).copy_from(a);
    m
}

/// `iγ₅` on the pair: `diag(iγ₅, iγ₅)`.
pub fn pair_i_gamma5() -> Mat8 {
    let ig5 = *RealGammas::paper().i_gamma5();
    block_diag(&ig5, &ig5)
}

/// `iγ⁰` on the pair; `γ⁰` swaps `e^{iγ₅px}` and `e^{−iγ₅px}`.
pub fn pair_i_gamma0() -> Mat8 {
    block_swap(&RealGammas::paper().i_gamma[0])
}

/// `∂ⱼ` on the pair: `diag(pⱼ iγ₅, −pⱼ iγ₅)`.
pub fn pair_derivative(p: &Momentum3, j: usize) -> Mat8 {
    let ig5 = *RealGammas::paper().i_gamma5();
    block_diag(&(ig5 * p[j]), &(ig5 * -p[j]))
}

/// `ĥ = −γ⁰γᵏ∂ₖ − imγ⁰` on the `±p` pair. `ĥ² = −E_p²` and `ĥᵀ = −ĥ`.
pub fn pair_hamiltonian(p: &Momentum3, m: f64) -> PairOperator {
    let g = RealGammas::paper();
    let k = -g.gamma0_gamma_dot(p) * g.i_gamma5();
    let mut matrix = block_diag(&k, &-k);
    matrix -= block_swap(&(g.i_gamma[0] * m));
    PairOperator { p: *p, m, matrix }
}

/// `p̂₅ʲ = −iγ₅∂ⱼ` on the pair: `diag(pⱼ, −pⱼ)`.
pub fn pair_axial_momentum(p: &Momentum3, m: f64) -> [PairOperator; 3] {
    let ig5 = pair_i_gamma5();
    core::array::from_fn(|j| PairOperator {
        p: *p,
        m,
        matrix: -ig5 * pair_derivative(p, j),
    })
}

/// `iγ₅(t) = iγ₅ + (m/E)(iγ⁰)(iγ₅)[sin(2Et) + Ĵ(1 − cos(2Et))]`, `Ĵ = ĥ/E`,
/// i.e. `i` times `γ₅(t) = γ₅ + imÊ⁻¹γ⁰γ₅[sin(2Êt) + Ĵ(1 − cos(2Êt))]`.
/// Squares to `−I`.
pub fn gamma5_heisenberg(p: &Momentum3, m: f64, t: f64) -> PairOperator {
    let e = (m * m + p.norm_squared()).sqrt();
    let ig5 = pair_i_gamma5();
    let mut matrix = ig5;
    if e > 0.0 {
        let h = pair_hamiltonian(p, m).matrix;
        let (s, c) = (2.0 * e * t).sin_cos();
        let bracket = Mat8::identity() * s + h * ((1.0 - c) / e);
        // i·(imγ⁰γ₅) = m(iγ⁰)(iγ₅)
        matrix += pair_i_gamma0() * ig5 * bracket * (m / e);
    }
    PairOperator { p: *p, m, matrix }
}

/// `p̂₅ʲ(t) = −iγ₅(t)∂ⱼ`.
pub fn axial_momentum_heisenberg(p: &Momentum3, m: f64, t: f64) -> [PairOperator; 3] {
    let g5t = gamma5_heisenberg(p, m, t).matrix;
    core::array::from_fn(|j| PairOperator {
        p: *p,
        m,
        matrix: -g5t * pair_derivative(p, j),
    })
}

/// `max_j ‖[p̂₅ʲ, ĥ] − 2imγ⁰p̂₅ʲ‖_max` on the pair.
pub fn commutator_check(p: &Momentum3, m: f64) -> f64 {
    let h = pair_hamiltonian(p, m).matrix;
    let ig0 = pair_i_gamma0();
    pair_axial_momentum(p, m)
        .iter()
        .map(|op| {
            let c = op.matrix * h - h * op.matrix;
            max_abs(&(c - ig0 * op.matrix * (2.0 * m)))
        })
        .fold(0.0, f64::max)
}

/// Coefficients of `δ(p − q)` and `δ(p + q)` in
/// `∫ψ_pᵀ p̂₅(t) ψ_q`, with `v`, `w` the bispinors of `ψ_p`, `ψ_q`:
///
/// `p[1 + (m²/E²)(cos 2Et − 1)](vᵀw)` and
/// `−p(m/E)[vᵀ iγ⁰ w sin 2Et + (1 − cos 2Et) vᵀγ₅γʲpʲ w/E]`.
///
/// On the box both deltas become Kronecker deltas of lattice momenta.
pub fn axial_matrix_element(
    p: &Momentum3,
    v: &RealBispinor,
    w: &RealBispinor,
    m: f64,
    t: f64,
) -> Result<(Vector3<f64>, Vector3<f64>)> {
    check_unit(v)?;
    check_unit(w)?;
    let g = RealGammas::paper();
    let e = (m * m + p.norm_squared()).sqrt();
    if !(e > 0.0) {
        return Ok((Vector3::zeros(), Vector3::zeros()));
    }
    let (s, c) = (2.0 * e * t).sin_cos();
    let same = p * ((1.0 + m * m / (e * e) * (c - 1.0)) * v.dot(w));
    // γ₅γʲpʲ = −(iγ₅)(iγʲpʲ)
    let g5gp = -(g.i_gamma5() * g.i_gamma_dot(p));
    let bracket = s * v.dot(&(g.i_gamma[0] * w)) + (1.0 - c) * v.dot(&(g5gp * w)) / e;
    let opposite = -p * (m / e * bracket);
    Ok((same, opposite))
}

fn check_normalized(field: &BispinorField) -> Result<()> {
    let norm_sq = crate::solver::scalar_product(field, field)?;
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::FieldNotNormalized { norm_sq });
    }
    Ok(())
}

/// `⟨(Δx̂ʲ)²⟩⟨(Δp̂₅ᵏ)²⟩` for a normalized field localized away from the box
/// boundary (`x` is measured in grid coordinates `[0, L)`).
pub fn variance_product(field: &BispinorField, j: usize, k: usize) -> Result<f64> {
    for axis in [j, k] {
        if !(1..=3).contains(&axis) {
            return Err(Error::BadAxis(axis));
        }
    }
    check_normalized(field)?;
    let grid = &field.grid;
    let dv = grid.cell_volume();
    let (mut mean, mut second) = (0.0, 0.0);
    for (i, v) in field.values.iter().enumerate() {
        let x = grid.position(i)[j - 1];
        let rho = v.norm_squared() * dv;
        mean += x * rho;
        second += x * x * rho;
    }
    let var_x = second - mean * mean;
    let d = &gradient(field)[k - 1];
    let pk = &axial_momentum_apply(field)[k - 1];
    let p_mean = crate::solver::scalar_product(field, pk)?;
    // ⟨p̂₅²⟩ = ⟨−∂²⟩ = ‖∂ψ‖²
    let p_second = crate::solver::scalar_product(d, d)?;
    Ok(var_x * (p_second - p_mean * p_mean))
}

/// [`variance_product`] with `k = j`; bounded below by 1/4.
pub fn uncertainty_product(field: &BispinorField, j: usize) -> Result<f64> {
    variance_product(field, j, j)
}

/// Normalized packet `∝ exp(−|x − c|²/(4σ²)) e^{iγ₅k·x} v` over the
/// active axes.
pub fn gaussian_packet(
    grid: &BoxGrid,
    center: &Vector3<f64>,
    width: f64,
    k: &Momentum3,
    v: &RealBispinor,
) -> Result<BispinorField> {
    if !(width > 0.0) {
        return Err(Error::InvalidGrid("packet width must be positive"));
    }
    let dims = grid.dims();
    let field = BispinorField::from_fn(grid, |x| {
        let r2: f64 = (0..dims).map(|a| (x[a] - center[a]).powi(2)).sum();
        axial_exponential(k, x) * v * (-r2 / (4.0 * width * width)).exp()
    });
    let n = crate::solver::scalar_product(&field, &field)?;
    if !(n > 0.0) {
        return Err(Error::FieldNotNormalized { norm_sq: n });
    }
    Ok(field.scaled(1.0 / n.sqrt()))
}

/// Helicity bases for every dynamic lattice momentum (`None` at `p = 0`
/// and Nyquist indices).
pub fn lattice_helicity_bases(grid: &BoxGrid) -> Vec<Option<HelicityBasis>> {
    (0..grid.len())
        .map(|i| {
            if grid.is_dynamic_mode(i) {
                helicity_basis(&grid.momentum(i)).ok()
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_special_values() {
        let p = Vector3::new(1.0, 0.0, 0.0);
        assert_eq!(axial_exponential(&p, &Vector3::zeros()), Mat4::identity());
        let e = axial_exponential(&p, &Vector3::new(core::f64::consts::FRAC_PI_2, 0.0, 0.0));
        assert!(max_abs(&(e - RealGammas::paper().i_gamma5())) < 1e-15);
    }

    #[test]
    fn basis_along_third_axis() {
        let b = helicity_basis(&Vector3::new(0.0, 0.0, 1.0)).unwrap();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((b.v1_plus - RealBispinor::new(-r, -r, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn basis_along_second_axis_uses_fallback() {
        let b = helicity_basis(&Vector3::new(0.0, 1.0, 0.0)).unwrap();
        assert!(b.orthonormality_residual() < 1e-14);
        assert!(b.eigen_residual() < 1e-14);
        assert!(helicity_basis(&Vector3::zeros()).is_err());
    }

    #[test]
    fn heisenberg_gamma5_endpoints() {
        let (p, m) = (Vector3::new(0.3_f64, -0.5, 0.8), 0.9_f64);
        let e = (m * m + p.norm_squared()).sqrt();
        assert_eq!(gamma5_heisenberg(&p, m, 0.0).matrix, pair_i_gamma5());
        let back = gamma5_heisenberg(&p, m, core::f64::consts::PI / e).matrix;
        assert!(max_abs(&(back - pair_i_gamma5())) < 1e-14);
    }

    #[test]
    fn unnormalized_plane_wave_is_rejected() {
        let v = RealBispinor::new(1.0, 1.0, 0.0, 0.0);
        assert!(plane_wave(&Vector3::zeros(), &v, &Vector3::zeros()).is_err());
    }
}
