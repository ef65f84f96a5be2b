//! Time evolution of real Majorana wave functions on the periodic box.
//!
//! Two independent routes solve `∂ₜψ = ĥψ`, `ĥ = −γ⁰γᵏ∂ₖ − imγ⁰`:
//! the closed-form helicity-mode expansion ([`mode_synthesize`]) and a
//! classical RK4 integrator over spectral derivatives ([`rk4_evolve`]).
//! The box convention `ψ = L^{−d/2} Σ_p e^{iγ₅p·x}(v₁⁺c₁ + v₂⁺c₂ + v₁⁻d₁ + v₂⁻d₂)`
//! replaces `(2π)^{−3/2}∫d³p`; see [`crate::grid`].

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::algebra::{cc_split, majorana_to_real, real_to_majorana, GammaRep, RealGammas, RepName};
use crate::axial::{helicity_basis, HelicityBasis};
use crate::grid::{
    axial_analysis, axial_synthesis, derivative_symbol, fourier_action, fourier_multiplier,
    gradient, AxialSpectrum, BispinorField, BoxGrid, ComplexBispinorField,
};
use crate::linalg::{rank, Momentum3, RealBispinor};
use crate::{Error, Result};

/// Upper bound on `dt·E_max` accepted by [`rk4_evolve`].
pub const STABILITY_BOUND: f64 = 0.1;

/// `⟨ψ₁|ψ₂⟩ = Σ_x (L/N)^d ψ₁ᵀψ₂`.
pub fn scalar_product(a: &BispinorField, b: &BispinorField) -> Result<f64> {
    a.check_same_grid(b)?;
    let s: f64 = a.values.iter().zip(&b.values).map(|(x, y)| x.dot(y)).sum();
    Ok(s * a.grid.cell_volume())
}

fn spectral_symbols(grid: &BoxGrid, idx: usize) -> Momentum3 {
    Momentum3::new(
        derivative_symbol(grid, idx, 0),
        derivative_symbol(grid, idx, 1),
        derivative_symbol(grid, idx, 2),
    )
}

/// `ĥψ` for the real gamma set `g` (any purely imaginary representation).
pub fn hamiltonian_apply_with(g: &RealGammas, field: &BispinorField, m: f64) -> BispinorField {
    let grid = field.grid.clone();
    let a = g.i_gamma[0] * m;
    fourier_action(field, |i, z| {
        let gk = g.gamma0_gamma_dot(&spectral_symbols(&grid, i));
        let re = RealBispinor::from_fn(|c, _| z[c].re);
        let im = RealBispinor::from_fn(|c, _| z[c].im);
        // −γ⁰γʲ(ikⱼ)(re + i·im) − m iγ⁰(re + i·im)
        let out_re = gk * im - a * re;
        let out_im = -(gk * re) - a * im;
        core::array::from_fn(|c| Complex64::new(out_re[c], out_im[c]))
    })
}

/// `ĥψ` with spectral spatial derivatives, in the `majorana-paper` representation.
pub fn hamiltonian_apply(field: &BispinorField, m: f64) -> BispinorField {
    hamiltonian_apply_with(&RealGammas::paper(), field, m)
}

/// Exact propagator `exp(tĥ)` applied mode by mode: for each Fourier
/// wave-vector `ĥ(k)² = −(k² + m²)`, so `exp(tĥ) = cos(Et) + sin(Et)ĥ/E`.
/// Any real mass sign is allowed.
pub fn spectral_propagate_with(
    g: &RealGammas,
    field: &BispinorField,
    m: f64,
    t: f64,
) -> BispinorField {
    let grid = field.grid.clone();
    let a = g.i_gamma[0] * m;
    let mut out = fourier_action(field, |i, z| {
        let k = spectral_symbols(&grid, i);
        let e = (k.norm_squared() + m * m).sqrt();
        if e == 0.0 {
            return z;
        }
        let gk = g.gamma0_gamma_dot(&k);
        let re = RealBispinor::from_fn(|c, _| z[c].re);
        let im = RealBispinor::from_fn(|c, _| z[c].im);
        let h_re = gk * im - a * re;
        let h_im = -(gk * re) - a * im;
        let (s, c) = (e * t).sin_cos();
        let r = re * c + h_re * (s / e);
        let q = im * c + h_im * (s / e);
        core::array::from_fn(|n| Complex64::new(r[n], q[n]))
    });
    out.time = field.time + t;
    out
}

fn check_stability(grid: &BoxGrid, m: f64, dt: f64) -> Result<()> {
    let e_max = grid.e_max(m);
    if !(dt.is_finite()) || dt.abs() * e_max >= STABILITY_BOUND {
        return Err(Error::Unstable {
            dt,
            e_max,
            bound: STABILITY_BOUND,
            suggested: 0.5 * STABILITY_BOUND / e_max,
        });
    }
    Ok(())
}

fn rk4_step(field: &BispinorField, m: f64, dt: f64) -> BispinorField {
    let k1 = hamiltonian_apply(field, m);
    let mut y = field.clone();
    y.axpy(dt / 2.0, &k1);
    let k2 = hamiltonian_apply(&y, m);
    let mut y = field.clone();
    y.axpy(dt / 2.0, &k2);
    let k3 = hamiltonian_apply(&y, m);
    let mut y = field.clone();
    y.axpy(dt, &k3);
    let k4 = hamiltonian_apply(&y, m);
    let mut out = field.clone();
    out.axpy(dt / 6.0, &k1);
    out.axpy(dt / 3.0, &k2);
    out.axpy(dt / 3.0, &k3);
    out.axpy(dt / 6.0, &k4);
    out.time = field.time + dt;
    out
}

/// `nsteps` classical RK4 steps of `∂ₜψ = ĥψ`. Requires
/// `|dt|·E_max < 0.1` with `E_max = √(m² + d(πN/L)²)`.
pub fn rk4_evolve(psi0: &BispinorField, m: f64, dt: f64, nsteps: usize) -> Result<BispinorField> {
    let mut out = None;
    rk4_visit(psi0, m, dt, nsteps, |_, f| out = Some(f.clone()))?;
    Ok(out.expect("visitor sees at least the initial field"))
}

/// RK4 trajectory; `visit(step, field)` sees steps `0..=nsteps`.
pub fn rk4_visit(
    psi0: &BispinorField,
    m: f64,
    dt: f64,
    nsteps: usize,
    mut visit: impl FnMut(usize, &BispinorField),
) -> Result<()> {
    check_stability(&psi0.grid, m, dt)?;
    let mut field = psi0.clone();
    visit(0, &field);
    for step in 1..=nsteps {
        field = rk4_step(&field, m, dt);
        visit(step, &field);
    }
    Ok(())
}

/// Initial axial amplitudes `(c₁, c₂, d₁, d₂)` per lattice index.
/// Always zero at `p = 0` and at Nyquist momenta.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeAmplitudes {
    pub grid: BoxGrid,
    pub values: Vec<[f64; 4]>,
}

impl ModeAmplitudes {
    pub fn zeros(grid: &BoxGrid) -> Self {
        ModeAmplitudes {
            grid: grid.clone(),
            values: alloc::vec![[0.0; 4]; grid.len()],
        }
    }

    /// `f(index, p)` evaluated on every dynamic mode.
    pub fn from_fn(grid: &BoxGrid, mut f: impl FnMut(usize, &Momentum3) -> [f64; 4]) -> Self {
        let mut out = Self::zeros(grid);
        for i in 0..grid.len() {
            if grid.is_dynamic_mode(i) {
                out.values[i] = f(i, &grid.momentum(i));
            }
        }
        out
    }

    /// Single populated mode; fails at `p = 0` or Nyquist.
    pub fn single(grid: &BoxGrid, idx: usize, amps: [f64; 4]) -> Result<Self> {
        if idx >= grid.len() || !grid.is_dynamic_mode(idx) {
            return Err(Error::DegenerateMomentum);
        }
        let mut out = Self::zeros(grid);
        out.values[idx] = amps;
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .fold(0.0, |a, x| a.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .fold(0.0, |a, (x, y)| a.max((x - y).abs()))
    }
}

/// `A¹..A⁴` and `B¹..B⁴` of both branches at one momentum.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeCoefficients {
    pub a_plus: [f64; 4],
    pub a_minus: [f64; 4],
    pub b_plus: [f64; 4],
    pub b_minus: [f64; 4],
}

/// The closed-form coefficients for `|p|`, `m` and initial `(c₁, c₂, d₁, d₂)`:
///
/// `A¹± = (1 ± p/E)c₁ ∓ (m/E)d₂`, `A²± = (1 ± p/E)c₂ ∓ (m/E)d₁`,
/// `A³± = (1 ∓ p/E)d₁ ± (m/E)c₂`, `A⁴± = (1 ∓ p/E)d₂ ± (m/E)c₁`,
/// `B¹± = −(1 ± p/E)c₂ ∓ (m/E)d₁`, `B²± = (1 ± p/E)c₁ ± (m/E)d₂`,
/// `B³± = −(1 ∓ p/E)d₂ ± (m/E)c₁`, `B⁴± = (1 ∓ p/E)d₁ ∓ (m/E)c₂`.
pub fn mode_coefficients(p_abs: f64, m: f64, amps: [f64; 4]) -> ModeCoefficients {
    let e = (p_abs * p_abs + m * m).sqrt();
    if e == 0.0 {
        return ModeCoefficients::default();
    }
    let (r, mu) = (p_abs / e, m / e);
    let [c1, c2, d1, d2] = amps;
    let branch = |s: f64| {
        let a = [
            (1.0 + s * r) * c1 - s * mu * d2,
            (1.0 + s * r) * c2 - s * mu * d1,
            (1.0 - s * r) * d1 + s * mu * c2,
            (1.0 - s * r) * d2 + s * mu * c1,
        ];
        let b = [
            -(1.0 + s * r) * c2 - s * mu * d1,
            (1.0 + s * r) * c1 + s * mu * d2,
            -(1.0 - s * r) * d2 + s * mu * c1,
            (1.0 - s * r) * d1 - s * mu * c2,
        ];
        (a, b)
    };
    let (a_plus, b_plus) = branch(1.0);
    let (a_minus, b_minus) = branch(-1.0);
    ModeCoefficients {
        a_plus,
        a_minus,
        b_plus,
        b_minus,
    }
}

/// Coefficients for every lattice momentum.
#[derive(Debug, Clone, PartialEq)]
pub struct ABCoefficients {
    pub grid: BoxGrid,
    pub m: f64,
    pub values: Vec<ModeCoefficients>,
}

pub fn ab_coefficients(amps: &ModeAmplitudes, m: f64) -> ABCoefficients {
    let grid = &amps.grid;
    let values = amps
        .values
        .iter()
        .enumerate()
        .map(|(i, a)| mode_coefficients(grid.momentum(i).norm(), m, *a))
        .collect();
    ABCoefficients {
        grid: grid.clone(),
        m,
        values,
    }
}

fn combine(basis: &HelicityBasis, k: &[f64; 4]) -> RealBispinor {
    basis.matrix() * RealBispinor::from_column_slice(k)
}

/// Cosine and sine vectors `(a, b)` with the mode contributing
/// `L^{−d/2}[cos(p·x)a + sin(p·x)b]`, and their time derivatives.
fn mode_profile(basis: &HelicityBasis, co: &ModeCoefficients, e: f64, t: f64) -> [RealBispinor; 4] {
    let ap = combine(basis, &co.a_plus);
    let am = combine(basis, &co.a_minus);
    let bp = combine(basis, &co.b_plus);
    let bm = combine(basis, &co.b_minus);
    let (s, c) = (e * t).sin_cos();
    let a = ((ap + am) * c + (bm - bp) * s) * 0.5;
    let b = ((ap - am) * s + (bp + bm) * c) * 0.5;
    let da = ((ap + am) * -s + (bm - bp) * c) * (0.5 * e);
    let db = ((ap - am) * c - (bp + bm) * s) * (0.5 * e);
    [a, b, da, db]
}

fn synthesize(amps: &ModeAmplitudes, m: f64, t: f64, rate: bool) -> BispinorField {
    let grid = &amps.grid;
    let ig5 = *RealGammas::paper().i_gamma5();
    let mut spec = AxialSpectrum::zeros(grid);
    for (i, a) in amps.values.iter().enumerate() {
        if !grid.is_dynamic_mode(i) || a.iter().all(|x| *x == 0.0) {
            continue;
        }
        let p = grid.momentum(i);
        let basis = helicity_basis(&p).expect("dynamic modes are nonzero");
        let e = (p.norm_squared() + m * m).sqrt();
        let co = mode_coefficients(p.norm(), m, *a);
        let [x, y, dx, dy] = mode_profile(&basis, &co, e, t);
        let (x, y) = if rate { (dx, dy) } else { (x, y) };
        // cos(px)x + sin(px)y = e^{iγ₅px}(x − iγ₅y)/2 + e^{−iγ₅px}(x + iγ₅y)/2
        spec.values[i] += (x - ig5 * y) * 0.5;
        spec.values[grid.negated(i)] += (x + ig5 * y) * 0.5;
    }
    axial_synthesis(&spec, t)
}

/// The closed-form solution at time `t` for initial amplitudes `amps`.
pub fn mode_synthesize(amps: &ModeAmplitudes, m: f64, t: f64) -> BispinorField {
    synthesize(amps, m, t, false)
}

/// Analytic `∂ₜ` of [`mode_synthesize`].
pub fn mode_rate(amps: &ModeAmplitudes, m: f64, t: f64) -> BispinorField {
    synthesize(amps, m, t, true)
}

/// Projection of `ψ₀` onto `e^{iγ₅p·x}v^{(±)}_α(p)`. Content at `p = 0`
/// and at Nyquist momenta is discarded.
pub fn amplitudes_from_field(psi0: &BispinorField) -> ModeAmplitudes {
    let spec = axial_analysis(psi0);
    let grid = &psi0.grid;
    ModeAmplitudes::from_fn(grid, |i, p| {
        let basis = helicity_basis(p).expect("dynamic modes are nonzero");
        let c = basis.matrix().transpose() * spec.values[i];
        [c[0], c[1], c[2], c[3]]
    })
}

/// `Êψ = √(m² − ∇²)ψ`, the non-negative root on every mode.
pub fn energy_apply(field: &BispinorField, m: f64) -> BispinorField {
    let grid = field.grid.clone();
    fourier_multiplier(field, |i| (m * m + grid.momentum(i).norm_squared()).sqrt())
}

/// Outcome of the single-mode pairing analysis at momentum `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingReport {
    pub coefficients: ModeCoefficients,
    pub plus_vanishes: bool,
    pub minus_vanishes: bool,
    /// Rank of the linear map `(c, d) ↦ (A₋, B₋)`; 4 means only
    /// `c = d = 0` removes the `−q` branch.
    pub minus_rank: usize,
    /// Same for `(c, d) ↦ (A₊, B₊)`.
    pub plus_rank: usize,
}

impl PairingReport {
    /// `A₋ = B₋ = 0 ⇒ c = d = 0`, and symmetrically for `+`.
    pub fn pairing_enforced(&self) -> bool {
        self.minus_rank == 4 && self.plus_rank == 4
    }
}

fn branch_matrix(p_abs: f64, m: f64, plus: bool) -> nalgebra::SMatrix<f64, 8, 4> {
    let mut mat = nalgebra::SMatrix::<f64, 8, 4>::zeros();
    for col in 0..4 {
        let mut e = [0.0; 4];
        e[col] = 1.0;
        let co = mode_coefficients(p_abs, m, e);
        let (a, b) = if plus {
            (co.a_plus, co.b_plus)
        } else {
            (co.a_minus, co.b_minus)
        };
        for r in 0..4 {
            mat[(r, col)] = a[r];
            mat[(r + 4, col)] = b[r];
        }
    }
    mat
}

/// Single mode `c_α(p,0) = c_α δ_{pq}`, `d_α(p,0) = d_α δ_{pq}`.
pub fn pairing_check(q: &Momentum3, m: f64, c: [f64; 2], d: [f64; 2]) -> Result<PairingReport> {
    if m < 0.0 {
        return Err(Error::NonPositiveMass(m));
    }
    let p_abs = q.norm();
    if p_abs == 0.0 {
        return Err(Error::DegenerateMomentum);
    }
    let amps = [c[0], c[1], d[0], d[1]];
    let co = mode_coefficients(p_abs, m, amps);
    let scale = amps.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let vanish = |a: &[f64; 4], b: &[f64; 4]| a.iter().chain(b).all(|x| x.abs() <= 1e-14 * scale);
    Ok(PairingReport {
        plus_vanishes: vanish(&co.a_plus, &co.b_plus),
        minus_vanishes: vanish(&co.a_minus, &co.b_minus),
        minus_rank: rank(&branch_matrix(p_abs, m, false), 1e-12),
        plus_rank: rank(&branch_matrix(p_abs, m, true), 1e-12),
        coefficients: co,
    })
}

/// Both conjugation sectors of a field evolved under the Majorana mass
/// term.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitEvolution {
    /// Conjugation-even part, evolved with mass `m + m_M`.
    pub plus: ComplexBispinorField,
    /// Conjugation-odd part, evolved with mass `m − m_M`.
    pub minus: ComplexBispinorField,
}

impl SplitEvolution {
    pub fn total(&self) -> ComplexBispinorField {
        let mut out = self.plus.clone();
        for (a, b) in out.values.iter_mut().zip(&self.minus.values) {
            *a += b;
        }
        out
    }
}

fn even_to_real(field: &ComplexBispinorField) -> Result<BispinorField> {
    let values = field
        .values
        .iter()
        .map(majorana_to_real)
        .collect::<Result<Vec<_>>>()?;
    Ok(BispinorField {
        grid: field.grid.clone(),
        values,
        time: field.time,
    })
}

fn real_to_even(field: &BispinorField) -> ComplexBispinorField {
    ComplexBispinorField {
        grid: field.grid.clone(),
        values: field.values.iter().map(real_to_majorana).collect(),
        time: field.time,
    }
}

/// Dirac-representation field `ψ₀` evolved by
/// `iγ^μ_D∂_μψ − mψ − m_Mψ_c = 0` through time `t`.
///
/// `ψ₀` is split into `ψ±`; the even part and `iψ₋` are Majorana, mapped to
/// real bispinors of the `majorana-alt` set and propagated exactly with
/// masses `m ± m_M` (sign kept).
pub fn majorana_mass_evolve(
    psi0: &ComplexBispinorField,
    m: f64,
    m_majorana: f64,
    t: f64,
) -> Result<SplitEvolution> {
    let alt = RealGammas::from_rep(&GammaRep::new(RepName::MajoranaAlt))?;
    let (plus, minus): (Vec<_>, Vec<_>) = psi0.values.iter().map(cc_split).unzip();
    let i = Complex64::new(0.0, 1.0);
    let even = ComplexBispinorField {
        grid: psi0.grid.clone(),
        values: plus,
        time: psi0.time,
    };
    let odd_rotated = ComplexBispinorField {
        grid: psi0.grid.clone(),
        values: minus.iter().map(|v| v * i).collect(),
        time: psi0.time,
    };
    let ev = spectral_propagate_with(&alt, &even_to_real(&even)?, m + m_majorana, t);
    let od = spectral_propagate_with(&alt, &even_to_real(&odd_rotated)?, m - m_majorana, t);
    let minus_t = real_to_even(&od).map(|v| v * -i);
    Ok(SplitEvolution {
        plus: real_to_even(&ev),
        minus: minus_t,
    })
}

/// `max |iγ^μ∂_μψ − mψ|` given `∂ₜψ` explicitly.
pub fn dirac_residual_with_rate(
    field: &BispinorField,
    rate: &BispinorField,
    m: f64,
) -> Result<f64> {
    field.check_same_grid(rate)?;
    let g = RealGammas::paper();
    let grad = gradient(field);
    let mut worst = 0.0f64;
    for i in 0..field.len() {
        let mut r = g.i_gamma[0] * rate.values[i] - field.values[i] * m;
        for (k, d) in grad.iter().enumerate() {
            r += g.i_gamma[k + 1] * d.values[i];
        }
        worst = worst.max(r.amax());
    }
    Ok(worst)
}

/// `max |iγ^μ∂_μψ − mψ|` over interior samples of an equally spaced
/// trajectory, with centered time differences.
pub fn dirac_residual(trajectory: &[BispinorField], m: f64) -> Result<f64> {
    if trajectory.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: trajectory.len(),
        });
    }
    let dt = trajectory[1].time - trajectory[0].time;
    if dt == 0.0 {
        return Err(Error::UnevenSampling);
    }
    for w in trajectory.windows(2) {
        w[0].check_same_grid(&w[1])?;
        if ((w[1].time - w[0].time) - dt).abs() > 1e-9 * dt.abs().max(1e-300) {
            return Err(Error::UnevenSampling);
        }
    }
    let mut worst = 0.0f64;
    for w in trajectory.windows(3) {
        let mut rate = w[2].clone();
        rate.axpy(-1.0, &w[0]);
        let rate = rate.scaled(0.5 / dt);
        worst = worst.max(dirac_residual_with_rate(&w[1], &rate, m)?);
    }
    Ok(worst)
}
