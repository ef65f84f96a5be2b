#![allow(dead_code)]

use majorana_core::grid::{BispinorField, BoxGrid};
use majorana_core::linalg::RealBispinor;
use majorana_core::solver::{mode_synthesize, scalar_product, ModeAmplitudes};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform4(r: &mut impl Rng) -> [f64; 4] {
    core::array::from_fn(|_| r.random_range(-1.0..1.0))
}

pub fn unit_bispinor(r: &mut impl Rng) -> RealBispinor {
    RealBispinor::from(uniform4(r)).normalize()
}

/// Random amplitudes on every dynamic mode, scaled to a unit-norm field.
pub fn random_amplitudes(grid: &BoxGrid, seed: u64) -> ModeAmplitudes {
    let mut r = rng(seed);
    let amps = ModeAmplitudes::from_fn(grid, |_, _| uniform4(&mut r));
    let f = mode_synthesize(&amps, 0.0, 0.0);
    let n = scalar_product(&f, &f).unwrap().sqrt();
    ModeAmplitudes {
        grid: grid.clone(),
        values: amps.values.iter().map(|a| a.map(|x| x / n)).collect(),
    }
}

pub fn random_field(grid: &BoxGrid, seed: u64) -> BispinorField {
    let mut r = rng(seed);
    BispinorField::from_fn(grid, |_| RealBispinor::from(uniform4(&mut r)))
}
