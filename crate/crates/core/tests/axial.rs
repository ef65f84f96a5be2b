mod common;

use common::{rng, unit_bispinor};
use majorana_core::algebra::RealGammas;
use majorana_core::axial::*;
use majorana_core::grid::BoxGrid;
use majorana_core::linalg::{max_abs, Mat8, Momentum3};
use majorana_core::solver::{scalar_product, spectral_propagate_with};
use nalgebra::Vector3;
use proptest::prelude::*;
use rand::Rng;

fn heisenberg_oracle(op: &Mat8, p: &Momentum3, m: f64, t: f64) -> Mat8 {
    let h = pair_hamiltonian(p, m).matrix;
    (h * -t).exp() * op * (h * t).exp()
}

#[test]
fn plane_waves_are_axial_eigenfunctions() {
    let grid = BoxGrid::new(8, 3.0, 3).unwrap();
    let mut r = rng(7);
    for label in [[1, 0, 0], [-2, 3, 1], [0, -1, -3]] {
        let p = grid.momentum(grid.index_of_label(label));
        let psi = plane_wave_field(&grid, &p, &unit_bispinor(&mut r)).unwrap();
        for (j, d) in axial_momentum_apply(&psi).iter().enumerate() {
            assert!(d.l2_distance(&psi.scaled(p[j])).unwrap() < 1e-12);
        }
    }
}

#[test]
fn continuum_plane_wave_normalization() {
    let p = Vector3::new(0.4, 0.1, -2.0);
    let v = unit_bispinor(&mut rng(2));
    let x = Vector3::new(1.0, 2.0, 3.0);
    let psi = plane_wave(&p, &v, &x).unwrap();
    assert!((psi.norm() - CONTINUUM_NORM).abs() < 1e-16);
    assert!((CONTINUUM_NORM - (2.0 * core::f64::consts::PI).powf(-1.5)).abs() < 1e-17);
}

#[test]
fn basis_along_second_axis() {
    for p in [
        Vector3::new(0.0, 2.5, 0.0),
        Vector3::new(1e-9, 1.0, -1e-9),
        Vector3::new(0.0, -0.7, 0.0),
        Vector3::new(3e-7, 0.3, 0.0),
    ] {
        let b = helicity_basis(&p).unwrap();
        assert!(b.orthonormality_residual() < 1e-10, "{p:?}");
        assert!(b.eigen_residual() < 1e-10 * p.norm().max(1.0), "{p:?}");
    }
}

#[test]
fn basis_is_continuous_across_fallback_threshold() {
    let inside = helicity_basis(&Vector3::new(0.99e-6, 1.0, 0.0)).unwrap();
    let outside = helicity_basis(&Vector3::new(1.01e-6, 1.0, 0.0)).unwrap();
    // projectors onto the +|p| eigenspace agree; bases may differ by a rotation inside it
    let proj =
        |b: &HelicityBasis| b.v1_plus * b.v1_plus.transpose() + b.v2_plus * b.v2_plus.transpose();
    assert!(max_abs(&(proj(&inside) - proj(&outside))) < 1e-5);
}

#[test]
fn heisenberg_gamma5_matches_exponential_conjugation() {
    let mut r = rng(11);
    for _ in 0..50 {
        let p = Vector3::new(
            r.random_range(-2.0..2.0),
            r.random_range(-2.0..2.0),
            r.random_range(-2.0..2.0),
        );
        let m = r.random_range(0.0..2.0);
        let t = r.random_range(-5.0..5.0);
        let closed = gamma5_heisenberg(&p, m, t).matrix;
        let oracle = heisenberg_oracle(&pair_i_gamma5(), &p, m, t);
        assert!(max_abs(&(closed - oracle)) < 1e-10);
        assert!(max_abs(&(closed * closed + Mat8::identity())) < 1e-10);
        for (j, op) in axial_momentum_heisenberg(&p, m, t).iter().enumerate() {
            let oracle = heisenberg_oracle(&pair_axial_momentum(&p, m)[j].matrix, &p, m, t);
            assert!(max_abs(&(op.matrix - oracle)) < 1e-10);
        }
    }
}

#[test]
fn axial_momentum_generator_relation() {
    let mut r = rng(12);
    for _ in 0..50 {
        let p = Vector3::new(
            r.random_range(-3.0..3.0),
            r.random_range(-3.0..3.0),
            r.random_range(-3.0..3.0),
        );
        assert!(commutator_check(&p, r.random_range(0.0..3.0)) < 1e-10);
    }
}

fn heisenberg_on_grid(
    grid: &BoxGrid,
    q: &Momentum3,
    w: &majorana_core::linalg::RealBispinor,
    m: f64,
    t: f64,
) -> [majorana_core::grid::BispinorField; 3] {
    let g = RealGammas::paper();
    let psi = plane_wave_field(grid, q, w).unwrap();
    let forward = spectral_propagate_with(&g, &psi, m, t);
    axial_momentum_apply(&forward).map(|f| spectral_propagate_with(&g, &f, m, -t))
}

#[test]
fn matrix_element_matches_grid_quadrature() {
    let grid = BoxGrid::new(8, 4.0, 3).unwrap();
    let mut r = rng(13);
    for label in [[1, 2, -1], [0, 0, 3], [-3, 1, 0]] {
        let p = grid.momentum(grid.index_of_label(label));
        let (v, w) = (unit_bispinor(&mut r), unit_bispinor(&mut r));
        let (m, t) = (r.random_range(0.2..2.0), r.random_range(0.0..4.0));
        let (same, opposite) = axial_matrix_element(&p, &v, &w, m, t).unwrap();
        let bra = plane_wave_field(&grid, &p, &v).unwrap();
        let at_p = heisenberg_on_grid(&grid, &p, &w, m, t);
        let at_minus_p = heisenberg_on_grid(&grid, &-p, &w, m, t);
        for j in 0..3 {
            let direct = scalar_product(&bra, &at_p[j]).unwrap();
            assert!(
                (direct - same[j]).abs() < 1e-8,
                "same {label:?} {j}: {direct} vs {}",
                same[j]
            );
            let cross = scalar_product(&bra, &at_minus_p[j]).unwrap();
            assert!(
                (cross - opposite[j]).abs() < 1e-8,
                "opposite {label:?} {j}: {cross} vs {}",
                opposite[j]
            );
        }
        // other lattice momenta do not couple
        let other =
            plane_wave_field(&grid, &grid.momentum(grid.index_of_label([2, 2, 2])), &v).unwrap();
        assert!(scalar_product(&other, &at_p[0]).unwrap().abs() < 1e-12);
    }
}

#[test]
fn matrix_element_massless_is_static() {
    let p = Vector3::new(0.3, -0.2, 1.0);
    let v = unit_bispinor(&mut rng(5));
    let w = unit_bispinor(&mut rng(6));
    let (s0, o0) = axial_matrix_element(&p, &v, &w, 0.0, 0.0).unwrap();
    let (s1, o1) = axial_matrix_element(&p, &v, &w, 0.0, 7.3).unwrap();
    assert_eq!(s0, s1);
    assert_eq!(o0, o1);
    assert_eq!(o0, Vector3::zeros());
}

#[test]
fn gaussian_packet_obeys_uncertainty_bound() {
    let grid = BoxGrid::new(64, 40.0, 1).unwrap();
    let v = unit_bispinor(&mut rng(9));
    let c = Vector3::new(20.0, 0.0, 0.0);
    let packet = gaussian_packet(&grid, &c, 2.0, &Vector3::new(1.5, 0.0, 0.0), &v).unwrap();
    let u = uncertainty_product(&packet, 1).unwrap();
    assert!((u - 0.25).abs() < 1e-6, "{u}");
    assert!(uncertainty_product(&packet, 4).is_err());
    assert!(uncertainty_product(&packet.scaled(2.0), 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn helicity_basis_properties(p in prop::array::uniform3(-5.0f64..5.0)) {
        let p = Vector3::from(p);
        prop_assume!(p.norm() > 1e-3);
        let b = helicity_basis(&p).unwrap();
        prop_assert!(b.orthonormality_residual() < 1e-12);
        prop_assert!(b.eigen_residual() < 1e-12 * p.norm().max(1.0));
    }

    #[test]
    fn axial_exponential_is_orthogonal(p in prop::array::uniform3(-5.0f64..5.0), x in prop::array::uniform3(-5.0f64..5.0)) {
        let e = axial_exponential(&Vector3::from(p), &Vector3::from(x));
        prop_assert!(max_abs(&(e.transpose() * e - majorana_core::linalg::Mat4::identity())) < 1e-14);
    }

    #[test]
    fn heisenberg_hamiltonian_is_conserved(p in prop::array::uniform3(-2.0f64..2.0), m in 0.0f64..2.0, t in -3.0f64..3.0) {
        let p = Vector3::from(p);
        let h = pair_hamiltonian(&p, m).matrix;
        let e2 = m * m + p.norm_squared();
        prop_assert!(max_abs(&(h * h + Mat8::identity() * e2)) < 1e-12 * (1.0 + e2));
        prop_assert!(max_abs(&(heisenberg_oracle(&h, &p, m, t) - h)) < 1e-10);
    }
}
