//! Gamma matrices and the three equivalent formulations of the Majorana
//! wave function: complex bispinors obeying `ψ_c = ψ` in the Dirac
//! representation, two-component spinors, and real bispinors.

use core::fmt;
use core::str::FromStr;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::linalg::{
    conj4, max_abs_c, ComplexBispinor, ComplexMatrix4, Mat4, RealBispinor, TwoSpinor,
};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Minkowski metric diagonal, signature (+,−,−,−).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// The built-in gamma-matrix sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepName {
    /// Block form with `γ⁰ = diag(σ₀, −σ₀)`, `γⁱ = [[0, σᵢ], [−σᵢ, 0]]`.
    Dirac,
    /// Imaginary set used for every real-bispinor computation in this crate.
    MajoranaPaper,
    /// Imaginary set obtained from the Dirac set by the real-form change of
    /// variables of [`real_form_matrix`].
    MajoranaAlt,
}

impl RepName {
    pub const ALL: [RepName; 3] = [RepName::Dirac, RepName::MajoranaPaper, RepName::MajoranaAlt];

    pub fn as_str(self) -> &'static str {
        match self {
            RepName::Dirac => "dirac",
            RepName::MajoranaPaper => "majorana-paper",
            RepName::MajoranaAlt => "majorana-alt",
        }
    }

    pub fn is_majorana(self) -> bool {
        !matches!(self, RepName::Dirac)
    }
}

impl fmt::Display for RepName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RepName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dirac" => Ok(RepName::Dirac),
            "majorana-paper" => Ok(RepName::MajoranaPaper),
            "majorana-alt" => Ok(RepName::MajoranaAlt),
            other => Err(Error::UnknownRepresentation(other.into())),
        }
    }
}

/// A named set `γ⁰, γ¹, γ², γ³, γ₅`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRep {
    pub name: RepName,
    /// Indices 0..=3 hold `γ^μ`, index 4 holds `γ₅`.
    pub gamma: [ComplexMatrix4; 5],
}

impl GammaRep {
    pub fn new(name: RepName) -> Self {
        let g = match name {
            RepName::Dirac => dirac_set(),
            RepName::MajoranaPaper => majorana_paper_set(),
            RepName::MajoranaAlt => majorana_alt_set(),
        };
        let g5 = (g[0] * g[1] * g[2] * g[3]).times_i();
        GammaRep {
            name,
            gamma: [g[0], g[1], g[2], g[3], g5],
        }
    }

    pub fn mu(&self, mu: usize) -> &ComplexMatrix4 {
        &self.gamma[mu]
    }

    pub fn gamma5(&self) -> &ComplexMatrix4 {
        &self.gamma[4]
    }

    /// Assemble a set from explicit matrices, e.g. a perturbed copy of a
    /// built-in set.
    pub fn with_gamma(name: RepName, gamma: [ComplexMatrix4; 5]) -> Self {
        GammaRep { name, gamma }
    }
}

/// Look up a built-in representation by its identifier.
pub fn make_gamma(name: &str) -> Result<GammaRep> {
    Ok(GammaRep::new(name.parse()?))
}

fn pauli() -> [Matrix2<Complex64>; 4] {
    [
        Matrix2::new(ONE, ZERO, ZERO, ONE),
        Matrix2::new(ZERO, ONE, ONE, ZERO),
        Matrix2::new(ZERO, -I, I, ZERO),
        Matrix2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

fn block(
    a: Matrix2<Complex64>,
    b: Matrix2<Complex64>,
    c: Matrix2<Complex64>,
    d: Matrix2<Complex64>,
) -> ComplexMatrix4 {
    let mut rows = [[ZERO; 4]; 4];
    for r in 0..2 {
        for col in 0..2 {
            rows[r][col] = a[(r, col)];
            rows[r][col + 2] = b[(r, col)];
            rows[r + 2][col] = c[(r, col)];
            rows[r + 2][col + 2] = d[(r, col)];
        }
    }
    ComplexMatrix4::from_rows(rows)
}

fn dirac_set() -> [ComplexMatrix4; 4] {
    let [s0, s1, s2, s3] = pauli();
    let z = Matrix2::zeros();
    [
        block(s0, z, z, -s0),
        block(z, s1, -s1, z),
        block(z, s2, -s2, z),
        block(z, s3, -s3, z),
    ]
}

fn majorana_paper_set() -> [ComplexMatrix4; 4] {
    let [s0, s1, s2, s3] = pauli();
    let z = Matrix2::zeros();
    [
        block(z, s2, s2, z),
        block(-s0, z, z, s0).times_i(),
        block(z, s1, s1, z).times_i(),
        block(z, s3, s3, z).times_i().scale(-1.0),
    ]
}

fn majorana_alt_set() -> [ComplexMatrix4; 4] {
    let [s0, s1, _, s3] = pauli();
    let z = Matrix2::zeros();
    [
        block(z, s0, -s0, z).times_i(),
        block(z, s3, s3, z).times_i().scale(-1.0),
        block(-s0, z, z, s0).times_i(),
        block(z, s1, s1, z).times_i(),
    ]
}

/// `max_{μ,ν} ‖γ^μγ^ν + γ^νγ^μ − 2η^{μν}I‖_max`.
pub fn clifford_residual(rep: &GammaRep) -> f64 {
    let mut worst = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let mut d = rep.gamma[mu].anticommutator(&rep.gamma[nu]);
            if mu == nu {
                d.re -= Mat4::identity() * (2.0 * METRIC[mu]);
            }
            worst = worst.max(d.max_abs());
        }
    }
    worst
}

/// Deviation of the stored `γ₅` from `iγ⁰γ¹γ²γ³`.
pub fn gamma5_residual(rep: &GammaRep) -> f64 {
    let g = &rep.gamma;
    let expected = (g[0] * g[1] * g[2] * g[3]).times_i();
    (expected - g[4]).max_abs()
}

/// Worst violation of `{γ₅, γ^μ} = 0` and `γ₅² = I`.
pub fn gamma5_algebra_residual(rep: &GammaRep) -> f64 {
    let g5 = rep.gamma5();
    let mut worst = (*g5 * *g5 - ComplexMatrix4::identity()).max_abs();
    for mu in 0..4 {
        worst = worst.max(g5.anticommutator(rep.mu(mu)).max_abs());
    }
    worst
}

/// Largest real part among the entries of `γ⁰..γ³`; zero for a Majorana
/// representation.
pub fn real_part_residual(rep: &GammaRep) -> f64 {
    rep.gamma[..4]
        .iter()
        .map(|g| crate::linalg::max_abs(&g.re))
        .fold(0.0, f64::max)
}

/// Symmetry pattern of the imaginary set: `γ⁰, γ₅` Hermitian and
/// antisymmetric, `γⁱ` anti-Hermitian and symmetric.
pub fn symmetry_pattern_residual(rep: &GammaRep) -> f64 {
    let mut worst = 0.0f64;
    for (idx, g) in rep.gamma.iter().enumerate() {
        let hermitian = idx == 0 || idx == 4;
        let (herm, sym) = if hermitian {
            (*g - g.adjoint(), *g + g.transpose())
        } else {
            (*g + g.adjoint(), *g - g.transpose())
        };
        worst = worst.max(herm.max_abs()).max(sym.max_abs());
    }
    worst
}

/// `iγ²_D`, the (real) matrix in the charge-conjugation map.
pub fn charge_conjugation_matrix() -> Mat4 {
    let g2 = GammaRep::new(RepName::Dirac).gamma[2].times_i();
    g2.re
}

/// `ψ_c = iγ²_D ψ*` (Dirac representation).
pub fn charge_conjugate(psi: &ComplexBispinor) -> ComplexBispinor {
    let c = charge_conjugation_matrix();
    let conj = conj4(psi);
    ComplexBispinor::from_fn(|r, _| (0..4).map(|k| conj[k] * c[(r, k)]).sum())
}

/// Unique decomposition `ψ = ψ₊ + ψ₋` into conjugation-even and -odd parts.
pub fn cc_split(psi: &ComplexBispinor) -> (ComplexBispinor, ComplexBispinor) {
    let c = charge_conjugate(psi);
    let half = Complex64::new(0.5, 0.0);
    ((psi + c) * half, (psi - c) * half)
}

/// `‖ψ_c − ψ‖_max`.
pub fn majorana_residual(psi: &ComplexBispinor) -> f64 {
    max_abs_c(&(charge_conjugate(psi) - psi))
}

/// `−iσ₂`, which maps `ξ*` to the lower half of a Majorana bispinor.
fn minus_i_sigma2() -> Matrix2<Complex64> {
    // −iσ₂ = [[0, −1], [1, 0]]
    Matrix2::new(ZERO, -ONE, ONE, ZERO)
}

/// Upper two components of a Majorana bispinor. Rejects input with
/// `‖ψ_c − ψ‖ > 1e-12 · max(1, ‖ψ‖)`.
pub fn majorana_to_two_spinor(psi: &ComplexBispinor) -> Result<TwoSpinor> {
    let residual = majorana_residual(psi);
    if residual > 1e-12 * max_abs_c(psi).max(1.0) {
        return Err(Error::NotMajorana { residual });
    }
    Ok(Vector2::new(psi[0], psi[1]))
}

/// `ψ = (ξ, −iσ₂ξ*)ᵀ`.
pub fn two_spinor_to_majorana(xi: &TwoSpinor) -> ComplexBispinor {
    let lower = minus_i_sigma2() * xi.map(|z| z.conj());
    ComplexBispinor::new(xi[0], xi[1], lower[0], lower[1])
}

/// Real form `Ξ = (ξ′, ξ″)` with `ξ = (ξ′ + iξ″)/√2`.
pub fn two_spinor_to_real(xi: &TwoSpinor) -> RealBispinor {
    let s = core::f64::consts::SQRT_2;
    RealBispinor::new(s * xi[0].re, s * xi[1].re, s * xi[0].im, s * xi[1].im)
}

pub fn real_to_two_spinor(big_xi: &RealBispinor) -> TwoSpinor {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    Vector2::new(
        Complex64::new(big_xi[0], big_xi[2]) * s,
        Complex64::new(big_xi[1], big_xi[3]) * s,
    )
}

/// `(1/√2) [[σ₀, iσ₀], [−iσ₂, −σ₂]]`, mapping a real bispinor `Ξ` to the
/// Majorana bispinor in the Dirac representation. Unitary.
pub fn real_form_matrix() -> ComplexMatrix4 {
    let [s0, _, s2, _] = pauli();
    block(s0, s0 * I, -s2 * I, -s2).scale(core::f64::consts::FRAC_1_SQRT_2)
}

pub fn real_to_majorana(big_xi: &RealBispinor) -> ComplexBispinor {
    real_form_matrix().apply(&big_xi.map(|x| Complex64::new(x, 0.0)))
}

pub fn majorana_to_real(psi: &ComplexBispinor) -> Result<RealBispinor> {
    Ok(two_spinor_to_real(&majorana_to_two_spinor(psi)?))
}

/// `∂₀ξ` solved from `i∂₀ξ + σᵢσ₂∂ᵢξ* − mξ = 0`, given `∂ᵢξ` for i = 1..3.
pub fn two_spinor_rhs(xi: &TwoSpinor, grad: &[TwoSpinor; 3], m: f64) -> TwoSpinor {
    let [_, s1, s2, s3] = pauli();
    let sigma = [s1, s2, s3];
    let mut rate = xi * (-I * m);
    for (s, d) in sigma.iter().zip(grad) {
        rate += (s * s2 * d.map(|z| z.conj())) * I;
    }
    rate
}

/// Spin matrix `S^j = iε_{jkl}[γ^k, γ^l]/8`, `j ∈ {1, 2, 3}`.
pub fn spin_matrix(rep: &GammaRep, j: usize) -> Result<ComplexMatrix4> {
    if !(1..=3).contains(&j) {
        return Err(Error::BadAxis(j));
    }
    let k = j % 3 + 1;
    let l = k % 3 + 1;
    // ε_{jkl} and ε_{jlk} both contribute, hence 2/8.
    Ok(rep.mu(k).commutator(rep.mu(l)).times_i().scale(0.25))
}

/// Real matrix `iγ^μ` (or `iγ₅` for index 4) of a Majorana representation.
pub fn i_gamma_real(rep: &GammaRep, idx: usize) -> Mat4 {
    rep.gamma[idx].times_i().re
}

/// Real matrices derived from an imaginary gamma set: `iγ^μ`, `iγ₅`, the
/// Dirac-operator blocks `γ⁰γᵏ` and `γ⁰γ₅`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealGammas {
    pub name: RepName,
    /// `iγ⁰, iγ¹, iγ², iγ³, iγ₅`.
    pub i_gamma: [Mat4; 5],
    /// `γ⁰γ¹, γ⁰γ², γ⁰γ³`.
    pub gamma0_gamma: [Mat4; 3],
    /// `γ⁰γ₅`.
    pub gamma0_gamma5: Mat4,
}

impl RealGammas {
    /// Fails unless the set is purely imaginary.
    pub fn from_rep(rep: &GammaRep) -> Result<Self> {
        if real_part_residual(rep) > 1e-14 {
            return Err(Error::NotMajoranaRepresentation(rep.name.as_str()));
        }
        let g = &rep.gamma;
        let prod = |a: &ComplexMatrix4, b: &ComplexMatrix4| (*a * *b).re;
        Ok(RealGammas {
            name: rep.name,
            i_gamma: core::array::from_fn(|k| i_gamma_real(rep, k)),
            gamma0_gamma: [prod(&g[0], &g[1]), prod(&g[0], &g[2]), prod(&g[0], &g[3])],
            gamma0_gamma5: prod(&g[0], &g[4]),
        })
    }

    /// The set used for all real-bispinor dynamics.
    pub fn paper() -> Self {
        Self::from_rep(&GammaRep::new(RepName::MajoranaPaper)).expect("imaginary by construction")
    }

    pub fn i_gamma5(&self) -> &Mat4 {
        &self.i_gamma[4]
    }

    /// `γ⁰γᵏpᵏ`.
    pub fn gamma0_gamma_dot(&self, p: &crate::linalg::Momentum3) -> Mat4 {
        self.gamma0_gamma[0] * p[0] + self.gamma0_gamma[1] * p[1] + self.gamma0_gamma[2] * p[2]
    }

    /// `iγᵏpᵏ`.
    pub fn i_gamma_dot(&self, p: &crate::linalg::Momentum3) -> Mat4 {
        self.i_gamma[1] * p[0] + self.i_gamma[2] * p[1] + self.i_gamma[3] * p[2]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dirac_gamma0_is_block_diagonal() {
        let rep = make_gamma("dirac").unwrap();
        assert_eq!(
            rep.gamma[0].re,
            Mat4::from_diagonal(&RealBispinor::new(1.0, 1.0, -1.0, -1.0))
        );
        assert_eq!(max_abs(&rep.gamma[0].im), 0.0);
        // γ² is the imaginary one, the rest are real
        assert_eq!(max_abs(&rep.gamma[2].re), 0.0);
        for mu in [0, 1, 3] {
            assert_eq!(max_abs(&rep.gamma[mu].im), 0.0);
        }
    }

    #[test]
    fn majorana_paper_gamma5_matches_block_form() {
        let rep = make_gamma("majorana-paper").unwrap();
        let g5 = rep.gamma5();
        let expected = Mat4::new(
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            -1.0, 0.0, 0.0, 0.0, //
            0.0, -1.0, 0.0, 0.0,
        );
        assert!(max_abs(&(g5.im - expected)) < 1e-15);
        assert_eq!(max_abs(&g5.re), 0.0);
    }

    #[test]
    fn every_builtin_satisfies_clifford() {
        for name in RepName::ALL {
            let rep = GammaRep::new(name);
            assert!(clifford_residual(&rep) < 1e-15, "{name}");
            assert!(gamma5_residual(&rep) < 1e-15);
            assert!(gamma5_algebra_residual(&rep) < 1e-15);
        }
    }

    #[test]
    fn majorana_sets_are_imaginary() {
        assert!(real_part_residual(&GammaRep::new(RepName::MajoranaPaper)) == 0.0);
        assert!(real_part_residual(&GammaRep::new(RepName::MajoranaAlt)) == 0.0);
        assert!(real_part_residual(&GammaRep::new(RepName::Dirac)) > 0.5);
        assert!(symmetry_pattern_residual(&GammaRep::new(RepName::MajoranaPaper)) < 1e-15);
    }

    #[test]
    fn scaled_gamma1_gives_residual_six() {
        let mut rep = GammaRep::new(RepName::MajoranaPaper);
        rep.gamma[1] = rep.gamma[1].scale(2.0);
        assert!((clifford_residual(&rep) - 6.0).abs() < 1e-15);
    }

    #[test]
    fn swapping_gamma0_and_gamma1_breaks_clifford() {
        let mut rep = GammaRep::new(RepName::Dirac);
        rep.gamma.swap(0, 1);
        // (γ¹)² = −I now sits where +I is required: off by 4 on the diagonal
        assert!((clifford_residual(&rep) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn unknown_name_is_rejected() {
        assert!(matches!(
            make_gamma("weyl"),
            Err(Error::UnknownRepresentation(_))
        ));
    }

    #[test]
    fn conjugation_examples() {
        let e0 = ComplexBispinor::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let out = charge_conjugate(&e0);
        assert_eq!(
            out,
            ComplexBispinor::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
        );
        let maj = ComplexBispinor::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(charge_conjugate(&maj), maj);
    }

    #[test]
    fn split_of_even_and_odd_inputs() {
        let even = two_spinor_to_majorana(&Vector2::new(c(0.3, -1.2), c(0.7, 0.4)));
        let (p, m) = cc_split(&even);
        assert!(max_abs_c(&(p - even)) < 1e-15);
        assert!(max_abs_c(&m) < 1e-15);
        let odd = even * I;
        let (p, m) = cc_split(&odd);
        assert!(max_abs_c(&p) < 1e-15);
        assert!(max_abs_c(&(m - odd)) < 1e-15);
    }

    #[test]
    fn two_spinor_examples() {
        let psi = two_spinor_to_majorana(&Vector2::new(c(1.0, 0.0), c(0.0, 0.0)));
        assert_eq!(
            psi,
            ComplexBispinor::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
        );
        let psi = two_spinor_to_majorana(&Vector2::new(c(0.0, 0.0), c(0.0, 1.0)));
        assert_eq!(
            psi,
            ComplexBispinor::new(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0))
        );
        assert_eq!(
            two_spinor_to_majorana(&TwoSpinor::zeros()),
            ComplexBispinor::zeros()
        );
    }

    #[test]
    fn non_majorana_input_is_rejected() {
        let e0 = ComplexBispinor::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        match majorana_to_two_spinor(&e0) {
            Err(Error::NotMajorana { residual }) => assert!((residual - 1.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn real_form_examples() {
        let s = core::f64::consts::SQRT_2;
        let big = two_spinor_to_real(&Vector2::new(c(s, 0.0), c(0.0, 0.0)));
        assert!((big - RealBispinor::new(2.0, 0.0, 0.0, 0.0)).norm() < 1e-15);
        let big = two_spinor_to_real(&Vector2::new(c(0.0, 0.4), c(0.0, -2.0)));
        assert_eq!((big[0], big[1]), (0.0, 0.0));
    }

    #[test]
    fn real_form_matrix_is_unitary() {
        let m = real_form_matrix();
        let prod = m.adjoint() * m;
        assert!((prod - ComplexMatrix4::identity()).max_abs() < 1e-15);
    }

    #[test]
    fn two_spinor_rhs_constant_field() {
        let xi = Vector2::new(c(1.0, 0.0), c(0.0, 0.0));
        let zero = [TwoSpinor::zeros(); 3];
        assert_eq!(two_spinor_rhs(&xi, &zero, 0.0), TwoSpinor::zeros());
        let r = two_spinor_rhs(&xi, &zero, 1.0);
        assert!((r - Vector2::new(c(0.0, -1.0), c(0.0, 0.0))).norm() < 1e-15);
    }

    #[test]
    fn spin_matrices_in_imaginary_rep_are_imaginary() {
        let rep = GammaRep::new(RepName::MajoranaPaper);
        for j in 1..=3 {
            let s = spin_matrix(&rep, j).unwrap();
            assert_eq!(max_abs(&s.re), 0.0);
        }
        assert!(matches!(spin_matrix(&rep, 0), Err(Error::BadAxis(0))));
    }

    #[test]
    fn spin_algebra() {
        for name in RepName::ALL {
            let rep = GammaRep::new(name);
            let s: alloc::vec::Vec<_> = (1..=3).map(|j| spin_matrix(&rep, j).unwrap()).collect();
            let casimir = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
            assert!((casimir - ComplexMatrix4::identity().scale(0.75)).max_abs() < 1e-15);
            let comm = s[0].commutator(&s[1]) - s[2].times_i();
            assert!(comm.max_abs() < 1e-15);
        }
    }
}
