//! Periodic box discretization.
//!
//! Lattice momenta are `2πn/L` with `n ∈ [−N/2, N/2)` per active axis,
//! stored in FFT order. Positions are `x_j = j·L/N`.
//!
//! Box normalization: an axial plane wave is `L^{−d/2} e^{iγ₅p·x} v`, so
//! that lattice plane waves are Kronecker-orthonormal under the quadrature
//! `Σ_x (L/N)^d`. Compared with the continuum convention
//! `(2π)^{−3/2} e^{iγ₅p·x} v` normalized to `δ(p − q)`, box amplitudes
//! carry an extra factor [`BoxGrid::continuum_factor`] `= (2π/L)^{d/2}`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::Vector3;
use num_complex::Complex64;
use num_traits::Float;

use crate::algebra::RealGammas;
use crate::fft::FftPlan;
use crate::linalg::{ComplexBispinor, Momentum3, RealBispinor};
use crate::{Error, Result};

/// `N` points per active axis, edge length `L`, `dims ∈ {1, 3}`.
///
/// With `dims = 1` only axis 1 is sampled; bispinors keep four components
/// and momenta point along `e₁`.
#[derive(Debug, Clone)]
pub struct BoxGrid {
    n: usize,
    l: f64,
    dims: usize,
    plan: FftPlan,
}

impl PartialEq for BoxGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.l == other.l && self.dims == other.dims
    }
}

impl BoxGrid {
    pub fn new(n: usize, l: f64, dims: usize) -> Result<Self> {
        if !n.is_power_of_two() || !(4..=64).contains(&n) {
            return Err(Error::InvalidGrid("N must be a power of two in 4..=64"));
        }
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidGrid("L must be positive and finite"));
        }
        if dims != 1 && dims != 3 {
            return Err(Error::InvalidGrid("dims must be 1 or 3"));
        }
        Ok(BoxGrid {
            n,
            l,
            dims,
            plan: FftPlan::new(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Total number of grid points (and of lattice momenta).
    pub fn len(&self) -> usize {
        self.n.pow(self.dims as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.l / self.n as f64
    }

    /// Quadrature weight `(L/N)^d`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dims as i32)
    }

    /// `L^{−d/2}`, the plane-wave prefactor.
    pub fn mode_normalization(&self) -> f64 {
        self.l.powf(-(self.dims as f64) / 2.0)
    }

    /// `(2π/L)^{d/2}`: box amplitude = continuum amplitude × this factor.
    pub fn continuum_factor(&self) -> f64 {
        (2.0 * core::f64::consts::PI / self.l).powf(self.dims as f64 / 2.0)
    }

    /// Fundamental lattice momentum `2π/L`.
    pub fn dk(&self) -> f64 {
        2.0 * core::f64::consts::PI / self.l
    }

    /// `√(m² + d·(πN/L)²)`, the largest energy the lattice can hold.
    pub fn e_max(&self, m: f64) -> f64 {
        let k = core::f64::consts::PI * self.n as f64 / self.l;
        (m * m + self.dims as f64 * k * k).sqrt()
    }

    fn axis_digits(&self, idx: usize) -> [usize; 3] {
        let mut d = [0usize; 3];
        let mut rest = idx;
        for axis in (0..self.dims).rev() {
            d[axis] = rest % self.n;
            rest /= self.n;
        }
        d
    }

    fn digits_to_index(&self, d: [usize; 3]) -> usize {
        (0..self.dims).fold(0, |acc, axis| acc * self.n + d[axis])
    }

    /// Signed integer momentum labels of a lattice index (inactive axes 0).
    pub fn mode_label(&self, idx: usize) -> [i64; 3] {
        let d = self.axis_digits(idx);
        let half = self.n / 2;
        let mut out = [0i64; 3];
        for axis in 0..self.dims {
            out[axis] = if d[axis] < half {
                d[axis] as i64
            } else {
                d[axis] as i64 - self.n as i64
            };
        }
        out
    }

    /// Lattice index of integer label `n` (components reduced mod N).
    pub fn index_of_label(&self, label: [i64; 3]) -> usize {
        let mut d = [0usize; 3];
        for axis in 0..self.dims {
            d[axis] = label[axis].rem_euclid(self.n as i64) as usize;
        }
        self.digits_to_index(d)
    }

    pub fn momentum(&self, idx: usize) -> Momentum3 {
        let label = self.mode_label(idx);
        Vector3::new(label[0] as f64, label[1] as f64, label[2] as f64) * self.dk()
    }

    pub fn position(&self, idx: usize) -> Vector3<f64> {
        let d = self.axis_digits(idx);
        let h = self.spacing();
        let mut x = Vector3::zeros();
        for axis in 0..self.dims {
            x[axis] = d[axis] as f64 * h;
        }
        x
    }

    /// Index of the lattice momentum `−p`.
    pub fn negated(&self, idx: usize) -> usize {
        let l = self.mode_label(idx);
        self.index_of_label([-l[0], -l[1], -l[2]])
    }

    /// Whether any active component sits at the Nyquist label `−N/2`.
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let half = -(self.n as i64 / 2);
        self.mode_label(idx)[..self.dims].contains(&half)
    }

    /// Modes with a well-defined helicity basis and exact spectral
    /// derivatives: `p ≠ 0` and no Nyquist component.
    pub fn is_dynamic_mode(&self, idx: usize) -> bool {
        idx != 0 && !self.is_nyquist(idx)
    }

    fn forward(&self, buf: &mut [Complex64]) {
        self.plan.run_nd(buf, self.dims, false);
    }

    fn inverse(&self, buf: &mut [Complex64]) {
        self.plan.run_nd(buf, self.dims, true);
    }
}

/// A real bispinor sampled on every grid point at time `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct BispinorField {
    pub grid: BoxGrid,
    pub values: Vec<RealBispinor>,
    pub time: f64,
}

impl BispinorField {
    pub fn zeros(grid: &BoxGrid) -> Self {
        BispinorField {
            grid: grid.clone(),
            values: vec![RealBispinor::zeros(); grid.len()],
            time: 0.0,
        }
    }

    /// Sample `f(x)` at every grid point.
    pub fn from_fn(grid: &BoxGrid, mut f: impl FnMut(&Vector3<f64>) -> RealBispinor) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.position(i))).collect();
        BispinorField {
            grid: grid.clone(),
            values,
            time: 0.0,
        }
    }

    pub fn at_time(mut self, t: f64) -> Self {
        self.time = t;
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid || self.values.len() != other.values.len() {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// `self += s · other`.
    pub fn axpy(&mut self, s: f64, other: &Self) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b * s;
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out
    }

    /// Apply a constant 4×4 matrix pointwise.
    pub fn map_matrix(&self, m: &crate::linalg::Mat4) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = m * *v);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| v.iter())
            .fold(0.0, |a, x| a.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|x| x.is_finite()))
    }

    /// `‖self − other‖_{L²}` with the box quadrature.
    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_squared())
            .sum();
        Ok((s * self.grid.cell_volume()).sqrt())
    }
}

/// A complex (Dirac-representation) bispinor field.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexBispinorField {
    pub grid: BoxGrid,
    pub values: Vec<ComplexBispinor>,
    pub time: f64,
}

impl ComplexBispinorField {
    pub fn from_fn(grid: &BoxGrid, mut f: impl FnMut(&Vector3<f64>) -> ComplexBispinor) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.position(i))).collect();
        ComplexBispinorField {
            grid: grid.clone(),
            values,
            time: 0.0,
        }
    }

    pub fn map(&self, f: impl Fn(&ComplexBispinor) -> ComplexBispinor) -> Self {
        ComplexBispinorField {
            grid: self.grid.clone(),
            values: self.values.iter().map(f).collect(),
            time: self.time,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| v.iter())
            .fold(0.0, |a, z| a.max(z.norm()))
    }

    /// `∫ ψ₁†ψ₂` with the box quadrature.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.dotc(b))
            .sum();
        Ok(s * self.grid.cell_volume())
    }
}

/// FFT of each of the four components.
fn component_spectra(field: &BispinorField) -> [Vec<Complex64>; 4] {
    core::array::from_fn(|c| {
        let mut buf: Vec<Complex64> = field
            .values
            .iter()
            .map(|v| Complex64::new(v[c], 0.0))
            .collect();
        field.grid.forward(&mut buf);
        buf
    })
}

fn real_from_spectra(grid: &BoxGrid, mut spectra: [Vec<Complex64>; 4], time: f64) -> BispinorField {
    let scale = 1.0 / grid.len() as f64;
    for buf in spectra.iter_mut() {
        grid.inverse(buf);
    }
    let values = (0..grid.len())
        .map(|i| {
            RealBispinor::new(
                spectra[0][i].re,
                spectra[1][i].re,
                spectra[2][i].re,
                spectra[3][i].re,
            ) * scale
        })
        .collect();
    BispinorField {
        grid: grid.clone(),
        values,
        time,
    }
}

/// Spectral wave-number along `axis` for a lattice index; zero at the
/// Nyquist label so the derivative of a real field stays real and
/// antisymmetric.
pub(crate) fn derivative_symbol(grid: &BoxGrid, idx: usize, axis: usize) -> f64 {
    if axis >= grid.dims() {
        return 0.0;
    }
    let label = grid.mode_label(idx)[axis];
    if label == -(grid.n() as i64 / 2) {
        0.0
    } else {
        label as f64 * grid.dk()
    }
}

/// Spectral partial derivatives `∂₁, ∂₂, ∂₃` (zero along inactive axes).
pub fn gradient(field: &BispinorField) -> [BispinorField; 3] {
    let grid = &field.grid;
    let spectra = component_spectra(field);
    core::array::from_fn(|axis| {
        if axis >= grid.dims() {
            return BispinorField::zeros(grid).at_time(field.time);
        }
        let scaled: [Vec<Complex64>; 4] = core::array::from_fn(|c| {
            spectra[c]
                .iter()
                .enumerate()
                .map(|(i, z)| z * Complex64::new(0.0, derivative_symbol(grid, i, axis)))
                .collect()
        });
        real_from_spectra(grid, scaled, field.time)
    })
}

/// Apply a scalar Fourier multiplier `f(|k|²)` to every component.
pub fn fourier_multiplier(field: &BispinorField, f: impl Fn(usize) -> f64) -> BispinorField {
    let grid = &field.grid;
    let mut spectra = component_spectra(field);
    for buf in spectra.iter_mut() {
        for (i, z) in buf.iter_mut().enumerate() {
            *z *= f(i);
        }
    }
    real_from_spectra(grid, spectra, field.time)
}

/// Apply a per-mode complex 4×4 action in Fourier space:
/// `out(k) = act(k, ψ̂(k))`.
pub(crate) fn fourier_action(
    field: &BispinorField,
    act: impl Fn(usize, [Complex64; 4]) -> [Complex64; 4],
) -> BispinorField {
    let grid = &field.grid;
    let spectra = component_spectra(field);
    let mut out: [Vec<Complex64>; 4] =
        core::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); grid.len()]);
    for i in 0..grid.len() {
        let v = act(
            i,
            [spectra[0][i], spectra[1][i], spectra[2][i], spectra[3][i]],
        );
        for c in 0..4 {
            out[c][i] = v[c];
        }
    }
    real_from_spectra(grid, out, field.time)
}

/// Coefficients `u(p)` of the expansion `ψ(x) = L^{−d/2} Σ_p e^{iγ₅p·x} u(p)`,
/// one real bispinor per lattice momentum (FFT order).
#[derive(Debug, Clone, PartialEq)]
pub struct AxialSpectrum {
    pub grid: BoxGrid,
    pub values: Vec<RealBispinor>,
}

impl AxialSpectrum {
    pub fn zeros(grid: &BoxGrid) -> Self {
        AxialSpectrum {
            grid: grid.clone(),
            values: vec![RealBispinor::zeros(); grid.len()],
        }
    }
}

/// Exact lattice inverse of [`axial_synthesis`]:
/// `u(p) = L^{−d/2} (L/N)^d Σ_x e^{−iγ₅p·x} ψ(x)`.
pub fn axial_analysis(field: &BispinorField) -> AxialSpectrum {
    let grid = &field.grid;
    let ig5 = *RealGammas::paper().i_gamma5();
    let spectra = component_spectra(field);
    let c = grid.mode_normalization() * grid.cell_volume();
    let values = (0..grid.len())
        .map(|i| {
            // F = C − iS with C = Σ cos(px)ψ, S = Σ sin(px)ψ
            let re = RealBispinor::from_fn(|k, _| spectra[k][i].re);
            let im = RealBispinor::from_fn(|k, _| spectra[k][i].im);
            (re + ig5 * im) * c
        })
        .collect();
    AxialSpectrum {
        grid: grid.clone(),
        values,
    }
}

/// `ψ(x) = L^{−d/2} Σ_p e^{iγ₅p·x} u(p)`.
pub fn axial_synthesis(spectrum: &AxialSpectrum, time: f64) -> BispinorField {
    let grid = &spectrum.grid;
    let ig5 = *RealGammas::paper().i_gamma5();
    let norm = grid.mode_normalization();
    // Σ e^{iγ₅px}u = Re Σ (u − i·iγ₅u) e^{ipx}
    let mut spectra: [Vec<Complex64>; 4] =
        core::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); grid.len()]);
    for (i, u) in spectrum.values.iter().enumerate() {
        let w = ig5 * u;
        for c in 0..4 {
            spectra[c][i] = Complex64::new(u[c], -w[c]) * norm;
        }
    }
    let n = grid.len() as f64;
    // real_from_spectra divides by N^d; the synthesis sum is unnormalized
    let mut field = real_from_spectra(grid, spectra, time);
    field.values.iter_mut().for_each(|v| *v *= n);
    field
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(BoxGrid::new(6, 1.0, 1).is_err());
        assert!(BoxGrid::new(128, 1.0, 1).is_err());
        assert!(BoxGrid::new(8, 0.0, 1).is_err());
        assert!(BoxGrid::new(8, 1.0, 2).is_err());
        assert!(BoxGrid::new(2, 1.0, 1).is_err());
    }

    #[test]
    fn labels_and_negation() {
        let g = BoxGrid::new(8, 2.0, 3).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.index_of_label(g.mode_label(i)), i);
            let j = g.negated(i);
            if !g.is_nyquist(i) {
                let (a, b) = (g.momentum(i), g.momentum(j));
                assert!((a + b).norm() < 1e-12);
            }
        }
        assert_eq!(g.mode_label(g.len() - 1), [-1, -1, -1]);
    }

    #[test]
    fn derivative_of_sine() {
        let g = BoxGrid::new(16, 3.0, 1).unwrap();
        let k = 3.0 * g.dk();
        let f = BispinorField::from_fn(&g, |x| {
            RealBispinor::new((k * x[0]).sin(), 0.0, (k * x[0]).cos(), 1.0)
        });
        let [d1, d2, _] = gradient(&f);
        for (i, v) in d1.values.iter().enumerate() {
            let x = g.position(i)[0];
            assert!((v[0] - k * (k * x).cos()).abs() < 1e-12);
            assert!((v[2] + k * (k * x).sin()).abs() < 1e-12);
            assert!(v[3].abs() < 1e-12);
        }
        assert_eq!(d2.max_abs(), 0.0);
    }

    #[test]
    fn axial_round_trip_includes_every_mode() {
        let g = BoxGrid::new(4, 1.7, 3).unwrap();
        let f = BispinorField::from_fn(&g, |x| {
            RealBispinor::new(
                x[0].sin() + x[2],
                x[1] * x[1],
                (x[0] * x[1]).cos(),
                0.3 - x[2],
            )
        });
        let back = axial_synthesis(&axial_analysis(&f), 0.0);
        assert!(back.l2_distance(&f).unwrap() < 1e-12);
    }
}
