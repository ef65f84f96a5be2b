mod common;

use core::f64::consts::PI;

use common::{rng, uniform4};
use majorana_core::grid::BoxGrid;
use majorana_core::linalg::{max_abs, rank, Mat4, Momentum3, RealBispinor};
use majorana_core::poincare::lorentz::spatial;
use majorana_core::poincare::massive::{
    amplitude_scalar_product, induced_rotation_spinor, lorentz_transform_bispinors,
    massive_amplitudes, massive_scalar_product, massive_v_minus, momentum_evolution_rhs,
    transform_samples, wigner_transform_amplitudes,
};
use majorana_core::poincare::massless::{
    massless_amplitude, massless_kernel, null_matrix, transform_massless_amplitudes,
};
use majorana_core::poincare::su2::{conjugation_residual, rotation_to_su2};
use majorana_core::poincare::*;
use majorana_core::solver::scalar_product;
use nalgebra::{Matrix2, Vector3, Vector4};
use num_complex::Complex64;
use rand::Rng;

fn random_vector(r: &mut impl Rng, max_norm: f64) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            r.random_range(-1.0..1.0),
            r.random_range(-1.0..1.0),
            r.random_range(-1.0..1.0),
        );
        if v.norm() <= 1.0 {
            return v * max_norm;
        }
    }
}

/// Rapidity ≤ 2, any rotation angle.
fn random_lorentz(r: &mut impl Rng) -> LorentzTransform {
    LorentzTransform::from_parameters(&random_vector(r, 2.0), &random_vector(r, PI))
}

fn random_momentum(r: &mut impl Rng) -> Momentum3 {
    random_vector(r, 2.0)
}

#[test]
fn wigner_rotations_fix_rest_momentum_and_compose() {
    let mut r = rng(70);
    let m = 1.3;
    let rest = Vector4::new(m, 0.0, 0.0, 0.0);
    for _ in 0..100 {
        let (l1, l2) = (random_lorentz(&mut r), random_lorentz(&mut r));
        let p = on_shell(&random_momentum(&mut r), m);
        let w = wigner_rotation(&l1, &p, m).unwrap();
        assert!((w.apply(&rest) - rest).amax() < 1e-10);
        assert!(w.rotation_residual() < 1e-10);
        let lhs = wigner_rotation(&(l1 * l2), &p, m).unwrap();
        let rhs = w * wigner_rotation(&l2, &l1.inverse().apply(&p), m).unwrap();
        assert!(max_abs(&(lhs.matrix - rhs.matrix)) < 1e-10);
    }
}

#[test]
fn spinor_representation_intertwines() {
    let mut r = rng(71);
    for _ in 0..100 {
        let l = random_lorentz(&mut r);
        assert!(l.orthogonality_residual() < 1e-12);
        let s = spinor_rep(&l);
        assert!(s.intertwining_residual(&l) < 1e-10);
        let l2 = random_lorentz(&mut r);
        let prod = spinor_rep(&(l * l2)).matrix;
        let composed = (s * spinor_rep(&l2)).matrix;
        assert!(max_abs(&(prod - composed)).min(max_abs(&(prod + composed))) < 1e-10);
    }
}

#[test]
fn full_turn_flips_sign() {
    for axis in [
        Vector3::x(),
        Vector3::y(),
        Vector3::z(),
        Vector3::new(0.3, -1.0, 2.0),
    ] {
        let s = rotation_spinor(&axis, 2.0 * PI).matrix;
        assert!(max_abs(&(s + Mat4::identity())) < 1e-15);
        let s = rotation_spinor(&axis, 4.0 * PI).matrix;
        assert!(max_abs(&(s - Mat4::identity())) < 1e-15);
    }
}

#[test]
fn intertwiner_reproduces_su2_real_form() {
    let o = *intertwiner_o().unwrap();
    assert!(max_abs(&(o.transpose() * o - Mat4::identity())) < 1e-12);
    let mut r = rng(72);
    for _ in 0..100 {
        let axis = random_vector(&mut r, 1.0);
        let angle = r.random_range(-PI..PI);
        let rot = LorentzTransform::rotation(&axis, angle);
        let (a, b) = rotation_to_su2(&rot.spatial_block()).unwrap();
        assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-12);
        let res = conjugation_residual(&spinor_rep(&rot), a, b).unwrap();
        assert!(res < 1e-10, "{res:e}");
    }
}

fn massive_packet(
    grid: &BoxGrid,
    m: f64,
    seed: u64,
) -> (MomentumSamples, Vec<RealBispinor>, Vec<RealBispinor>) {
    let mut r = rng(seed);
    let mut v_plus = vec![RealBispinor::zeros(); grid.len()];
    let mut v_minus = vec![RealBispinor::zeros(); grid.len()];
    for i in lattice_indices(grid) {
        let p = grid.momentum(i);
        let env = (-p.norm_squared() / 4.0).exp();
        v_plus[i] = RealBispinor::from(uniform4(&mut r)) * env;
        v_minus[i] = massive_v_minus(&p, m, &v_plus[i]).unwrap();
    }
    (MomentumSamples::lattice(grid), v_plus, v_minus)
}

#[test]
fn three_scalar_products_agree() {
    let grid = BoxGrid::new(16, 12.0, 3).unwrap();
    let m = 0.9;
    let (samples, v_plus, v_minus) = massive_packet(&grid, m, 73);
    let (_, w_plus, w_minus) = massive_packet(&grid, m, 74);
    let compact = |v: &[RealBispinor]| lattice_indices(&grid).map(|i| v[i]).collect::<Vec<_>>();
    let (a, b) = (compact(&v_plus), compact(&w_plus));
    let momentum_form = massive_scalar_product(&samples, m, &a, &b).unwrap();
    let amp_form = amplitude_scalar_product(
        &samples,
        m,
        &massive_amplitudes(&samples, m, &a).unwrap(),
        &massive_amplitudes(&samples, m, &b).unwrap(),
    )
    .unwrap();
    for t in [0.0, 2.3] {
        let f = momentum_synthesis(&grid, m, &v_plus, &v_minus, t).unwrap();
        let g = momentum_synthesis(&grid, m, &w_plus, &w_minus, t).unwrap();
        let position_form = scalar_product(&f, &g).unwrap();
        let scale = momentum_form.abs().max(1.0);
        assert!(
            (position_form - momentum_form).abs() < 1e-6 * scale,
            "{position_form} vs {momentum_form}"
        );
    }
    assert!((amp_form - momentum_form).abs() < 1e-6 * momentum_form.abs().max(1.0));
}

#[test]
fn momentum_synthesis_solves_field_equation() {
    let grid = BoxGrid::new(8, 6.0, 3).unwrap();
    let m = 1.1;
    let (_, v_plus, v_minus) = massive_packet(&grid, m, 75);
    let h = 1e-4;
    let f = |t: f64| momentum_synthesis(&grid, m, &v_plus, &v_minus, t).unwrap();
    let mut rate = f(0.5 + h);
    rate.axpy(-1.0, &f(0.5 - h));
    let rate = rate.scaled(0.5 / h);
    let res = majorana_core::solver::dirac_residual_with_rate(&f(0.5), &rate, m).unwrap();
    assert!(res < 1e-6 * f(0.5).max_abs(), "{res:e}");
    // the momentum-space ODE is ĥ restricted to the ±p pair
    for i in lattice_indices(&grid).take(10) {
        let p = grid.momentum(i);
        let (dp, dm) = momentum_evolution_rhs(&v_plus[i], &v_minus[i], &p, m);
        let (hp, hm) = majorana_core::axial::pair_hamiltonian(&p, m).apply(&v_plus[i], &v_minus[i]);
        assert!((dp - hp).norm() + (dm - hm).norm() < 1e-13);
    }
}

#[test]
fn massive_products_are_lorentz_invariant() {
    let mut r = rng(76);
    let m = 1.0;
    let momenta: Vec<_> = (0..40).map(|_| random_momentum(&mut r)).collect();
    let weights: Vec<_> = (0..40).map(|_| r.random_range(0.1..1.0)).collect();
    let samples = MomentumSamples::new(momenta, weights).unwrap();
    let v: Vec<_> = (0..40)
        .map(|_| RealBispinor::from(uniform4(&mut r)))
        .collect();
    let w: Vec<_> = (0..40)
        .map(|_| RealBispinor::from(uniform4(&mut r)))
        .collect();
    let before = massive_scalar_product(&samples, m, &v, &w).unwrap();
    for _ in 0..20 {
        let l = random_lorentz(&mut r);
        let (moved, v2) = lorentz_transform_bispinors(&samples, &v, &l, m).unwrap();
        let (_, w2) = lorentz_transform_bispinors(&samples, &w, &l, m).unwrap();
        let after = massive_scalar_product(&moved, m, &v2, &w2).unwrap();
        assert!((after - before).abs() < 1e-8 * before.abs().max(1.0));

        // amplitude law agrees with the bispinor law up to a sign per sample
        let a = massive_amplitudes(&samples, m, &v).unwrap();
        let (_, a2) = wigner_transform_amplitudes(&samples, &a, &l, m).unwrap();
        let direct = massive_amplitudes(&moved, m, &v2).unwrap();
        for (k, (x, y)) in a2.iter().zip(&direct).enumerate() {
            assert!(
                (x - y).norm().min((x + y).norm()) < 1e-9 * x.norm().max(1.0),
                "sample {k}"
            );
            let wr = wigner_rotation(&l, &on_shell(&moved.momenta[k], m), m).unwrap();
            let induced = induced_rotation_spinor(&l, &samples.momenta[k], m)
                .unwrap()
                .matrix;
            let s = spinor_rep(&wr).matrix;
            assert!(max_abs(&(induced - s)).min(max_abs(&(induced + s))) < 1e-9);
        }
        let moved_again = transform_samples(&moved, &l.inverse(), m);
        for (p, q) in moved_again.momenta.iter().zip(&samples.momenta) {
            assert!((p - q).norm() < 1e-10);
        }
    }
}

#[test]
fn translations_preserve_products() {
    let mut r = rng(77);
    let m = 0.7;
    let momenta: Vec<_> = (0..10).map(|_| random_momentum(&mut r)).collect();
    let samples = MomentumSamples::new(momenta, vec![1.0; 10]).unwrap();
    let v: Vec<_> = (0..10)
        .map(|_| RealBispinor::from(uniform4(&mut r)))
        .collect();
    let a = Vector4::new(0.3, -1.0, 2.0, 0.5);
    let moved =
        majorana_core::poincare::massive::translate_bispinors(&samples, &v, &a, 1.0, m).unwrap();
    let before = massive_scalar_product(&samples, m, &v, &v).unwrap();
    let after = massive_scalar_product(&samples, m, &moved, &moved).unwrap();
    assert!((before - after).abs() < 1e-12 * before);
}

#[test]
fn null_matrix_is_nilpotent_and_its_range_is_the_kernel() {
    let mut r = rng(80);
    for _ in 0..100 {
        let p = random_momentum(&mut r);
        let n = null_matrix(&p).unwrap();
        assert!(max_abs(&(n * n)) < 1e-13 * p.norm_squared().max(1.0));
        let k = massless_kernel(&p);
        assert_eq!(rank(&n, 1e-10), 2);
        assert_eq!(rank(&k, 1e-10), 2);
        // K·N = 0 with both of rank 2: ker K = range N, i.e. pure gauge
        assert!(max_abs(&(k * n)) < 1e-12 * p.norm_squared().max(1.0));
    }
}

#[test]
fn massless_product_is_gauge_invariant() {
    let mut r = rng(81);
    let momenta: Vec<_> = (0..30).map(|_| random_momentum(&mut r)).collect();
    let samples = MomentumSamples::new(momenta.clone(), vec![0.5; 30]).unwrap();
    let rand4 = |r: &mut rand_chacha::ChaCha8Rng| {
        (0..30)
            .map(|_| RealBispinor::from(uniform4(r)))
            .collect::<Vec<_>>()
    };
    let (a, b, c, d) = (rand4(&mut r), rand4(&mut r), rand4(&mut r), rand4(&mut r));
    let before = massless_scalar_product(&samples, &a, &b, &c, &d).unwrap();
    let shift = |w: &[RealBispinor], chi: &[RealBispinor]| {
        w.iter()
            .zip(chi)
            .zip(&momenta)
            .map(|((w, x), p)| gauge_transform(w, x, p).unwrap())
            .collect::<Vec<_>>()
    };
    let (ga, gb, gc, gd) = (
        shift(&a, &rand4(&mut r)),
        shift(&b, &rand4(&mut r)),
        shift(&c, &rand4(&mut r)),
        shift(&d, &rand4(&mut r)),
    );
    let after = massless_scalar_product(&samples, &ga, &gb, &gc, &gd).unwrap();
    assert!((after - before).abs() < 1e-12 * before.abs().max(1.0));
    for (p, w) in momenta.iter().zip(&a) {
        let pot = MasslessPotential::new(*p, *w, *w).unwrap();
        assert!(massless_constraint_residual(&pot.v_plus(), p).unwrap() < 1e-12);
    }
}

#[test]
fn little_group_fixes_standard_null_momentum() {
    let mut r = rng(82);
    let kappa = 1.0;
    let pk = standard_null(kappa);
    for _ in 0..100 {
        let l = random_lorentz(&mut r);
        let p = random_momentum(&mut r);
        let act = little_group_massless(&l, &p, kappa).unwrap();
        assert!((act.element.apply(&pk) - pk).amax() < 1e-12);
        assert!(act.gauge_leak() < 1e-10);
        // physical block is ± a rotation by half the transverse angle
        let e = act.element.matrix;
        let theta = e[(2, 1)].atan2(e[(1, 1)]);
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let rot = Matrix2::new(c, -s, s, c);
        let b = act.physical_block();
        assert!((b - rot).amax().min((b + rot).amax()) < 1e-10);
    }
}

#[test]
fn helicity_phase_for_rotations_about_the_third_axis() {
    let kappa = 2.0;
    let p = Vector3::new(0.0, 0.0, kappa);
    for k in 0..50 {
        let theta = -PI + (k as f64 + 0.5) * (2.0 * PI / 50.0);
        let l = LorentzTransform::rotation(&Vector3::z(), theta);
        let act = little_group_massless(&l, &p, kappa).unwrap();
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        assert!((act.physical_block() - Matrix2::new(c, -s, s, c)).amax() < 1e-12);
        assert!((act.phase() - Complex64::from_polar(1.0, theta / 2.0)).norm() < 1e-12);
        // a boost along the momentum does not act at all
        let b = LorentzTransform::boost(&Vector3::z(), 0.1 * k as f64 - 2.0);
        let act = little_group_massless(&(l * b), &p, kappa).unwrap();
        assert!((act.phase() - Complex64::from_polar(1.0, theta / 2.0)).norm() < 1e-12);
    }
}

#[test]
fn massless_amplitude_law_matches_bispinor_law() {
    let mut r = rng(83);
    let kappa = 1.0;
    for _ in 0..50 {
        let l = random_lorentz(&mut r);
        let p = random_momentum(&mut r);
        let w = RealBispinor::from(uniform4(&mut r));
        let c = massless_amplitude(&p, kappa, &w).unwrap();
        let (moved, c2) = transform_massless_amplitudes(&l, &[p], &[c], kappa).unwrap();
        let w2 = spinor_rep(&l).matrix * w;
        let direct = massless_amplitude(&moved[0], kappa, &w2).unwrap();
        // physical amplitudes agree up to the double-cover sign
        let (x, y) = (
            c2[0].fixed_rows::<2>(0).into_owned(),
            direct.fixed_rows::<2>(0).into_owned(),
        );
        assert!((x - y).norm().min((x + y).norm()) < 1e-9 * x.norm().max(1.0));
        let q = spatial(&l.apply(&Vector4::new(p.norm(), p[0], p[1], p[2])));
        assert!((q - moved[0]).norm() < 1e-12 * q.norm().max(1.0));
    }
}
