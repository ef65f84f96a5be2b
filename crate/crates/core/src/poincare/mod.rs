//! Poincaré structure of the real solution space.
//!
//! Momentum-space data are real bispinors attached to a finite set of
//! momenta with `d³p` weights ([`MomentumSamples`]); on the periodic box the
//! lattice momenta with unit weight reproduce position-space products
//! exactly (see [`momentum_synthesis`]).

use alloc::vec::Vec;

use num_traits::Float;

pub mod lorentz;
pub mod massive;
pub mod massless;
pub mod spinor;
pub mod su2;

pub use lorentz::{
    boost_to, little_group_element, massless_boost, minkowski, on_shell, standard_null,
    wigner_rotation, FourVector, LorentzTransform,
};
pub use massive::{
    amplitude_scalar_product, massive_amplitudes, massive_scalar_product, massive_v_minus,
    momentum_evolution_rhs, translation_phase,
};
pub use massless::{
    gauge_transform, little_group_massless, massless_constraint_residual, massless_potential,
    massless_scalar_product, LittleGroupAction, MasslessPotential, StandardBasisMassless,
};
pub use spinor::{rotation_spinor, spinor_rep, SpinorTransform};
pub use su2::{intertwiner_o, rotation_to_su2, su2_real_form};

use crate::grid::{axial_synthesis, AxialSpectrum, BispinorField, BoxGrid};
use crate::linalg::{Momentum3, RealBispinor};
use crate::{Error, Result};

/// Momenta with `d³p` integration weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumSamples {
    pub momenta: Vec<Momentum3>,
    pub weights: Vec<f64>,
}

impl MomentumSamples {
    pub fn new(momenta: Vec<Momentum3>, weights: Vec<f64>) -> Result<Self> {
        if momenta.len() != weights.len() {
            return Err(Error::LengthMismatch(momenta.len(), weights.len()));
        }
        Ok(MomentumSamples { momenta, weights })
    }

    /// Every nonzero, non-Nyquist lattice momentum with unit weight, in
    /// lattice-index order; `indices()` gives the matching lattice indices.
    pub fn lattice(grid: &BoxGrid) -> Self {
        let momenta: Vec<_> = lattice_indices(grid).map(|i| grid.momentum(i)).collect();
        let weights = alloc::vec![1.0; momenta.len()];
        MomentumSamples { momenta, weights }
    }

    pub fn len(&self) -> usize {
        self.momenta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.momenta.is_empty()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if n == self.len() {
            Ok(())
        } else {
            Err(Error::LengthMismatch(self.len(), n))
        }
    }
}

/// Lattice indices used by [`MomentumSamples::lattice`].
pub fn lattice_indices(grid: &BoxGrid) -> impl Iterator<Item = usize> + '_ {
    (0..grid.len()).filter(|&i| grid.is_dynamic_mode(i))
}

/// `ψ(t,x) = L^{−d/2} Σ_p E_p⁻¹ [e^{iγ₅(p·x − E_pt)}v₊(p) + e^{−iγ₅(p·x − E_pt)}v₋(p)]`
/// with `v±` given per lattice index (the box form of the on-shell
/// momentum representation; `m = 0` allowed).
pub fn momentum_synthesis(
    grid: &BoxGrid,
    m: f64,
    v_plus: &[RealBispinor],
    v_minus: &[RealBispinor],
    t: f64,
) -> Result<BispinorField> {
    if v_plus.len() != grid.len() || v_minus.len() != grid.len() {
        return Err(Error::LengthMismatch(
            grid.len(),
            v_plus.len().min(v_minus.len()),
        ));
    }
    let ig5 = *crate::algebra::RealGammas::paper().i_gamma5();
    let mut spec = AxialSpectrum::zeros(grid);
    for i in lattice_indices(grid) {
        let p = grid.momentum(i);
        let e = (m * m + p.norm_squared()).sqrt();
        let (s, c) = (e * t).sin_cos();
        let rot = nalgebra::Matrix4::identity() * c + ig5 * s;
        let rot_t = rot.transpose();
        spec.values[i] += rot_t * v_plus[i] / e;
        spec.values[grid.negated(i)] += rot * v_minus[i] / e;
    }
    Ok(axial_synthesis(&spec, t))
}
