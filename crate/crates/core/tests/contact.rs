#![allow(clippy::needless_range_loop)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sasaki_core::contact::{
    fundamental_2form_residual, horizontal_project, nijenhuis, normality_residuals_theorem1,
    sasakian_residuals, sigma, tensor_S, tensor_T,
};
use sasaki_core::models::{
    calibrated_heisenberg, flat_dummy_bundle, heisenberg_frame, random_vector, sample_points,
};
use sasaki_core::{CurvatureSign, EndField, Point, ScalarField, VectorField};

fn heisenberg() -> sasaki_core::ModelInstance {
    calibrated_heisenberg(42).unwrap()
}

fn random_field(rng: &mut ChaCha8Rng) -> VectorField {
    VectorField::constant(random_vector(6, rng).as_slice())
}

/// Affine field `c + A x`, so brackets and derivatives are nontrivial.
fn affine_field(rng: &mut ChaCha8Rng) -> VectorField {
    let c = random_vector(6, rng);
    let rows: Vec<_> = (0..6).map(|_| random_vector(6, rng)).collect();
    VectorField::new(
        (0..6)
            .map(|k| {
                let mut f = ScalarField::constant(c[k]);
                for (i, a) in rows[k].iter().enumerate() {
                    f = &f + &(ScalarField::coord(i) * *a);
                }
                f
            })
            .collect(),
    )
}

#[test]
fn projecting_u_leaves_no_horizontal_part() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    for p in sample_points(&m.chart, 8, 1) {
        let s = horizontal_project(b, &b.U, &p).unwrap();
        assert!(s.horizontal.amax() <= 1e-12);
        assert!((s.u_coeff - 1.0).abs() <= 1e-12);
        assert!(s.v_coeff.abs() <= 1e-12);
    }
}

#[test]
fn frame_vector_is_already_horizontal() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let [e1, ..] = heisenberg_frame();
    for p in sample_points(&m.chart, 8, 2) {
        let s = horizontal_project(b, &e1, &p).unwrap();
        let e = e1.at(&p.coords);
        assert!(s.u_coeff.abs() + s.v_coeff.abs() <= 1e-12);
        for k in 0..6 {
            assert!((s.horizontal[k] - e[k]).abs() <= 1e-12);
        }
    }
}

#[test]
fn split_reconstructs() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in sample_points(&m.chart, 16, 3) {
        let x = random_field(&mut rng);
        let split = horizontal_project(b, &x, &p).unwrap();
        let (_, s) = m.structure(&p).unwrap();
        let back = split.reconstruct(&s);
        let orig = x.at(&p.coords);
        for k in 0..6 {
            assert!((back[k] - orig[k]).abs() <= 1e-10);
        }
        assert!(s.is_horizontal(&split.horizontal));
    }
}

#[test]
fn sigma_vanishes() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in sample_points(&m.chart, 16, 4) {
        assert!(sigma(b, &random_field(&mut rng), &p).unwrap().abs() <= 1e-10);
        assert_eq!(sigma(b, &VectorField::zero(6), &p).unwrap(), 0.0);
    }
}

#[test]
fn sigma_vanishes_for_parallel_pair() {
    let b = flat_dummy_bundle();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = Point::new(vec![0.1, 0.2, 0.3, -0.4, 0.5, -0.6]);
    assert_eq!(sigma(&b, &random_field(&mut rng), &p).unwrap(), 0.0);
}

#[test]
fn theorem_two_laws_on_heisenberg_g_side() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for p in sample_points(&m.chart, 16, 6) {
        let r =
            sasakian_residuals(b, &random_field(&mut rng), &random_field(&mut rng), &p).unwrap();
        assert!(r.g_law.amax() <= 1e-8);
    }
}

#[test]
fn dummy_flat_structure_is_not_sasakian() {
    let b = flat_dummy_bundle();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let worst = sample_points(&sasaki_core::Chart::new(&["a"; 6]), 8, 7)
        .iter()
        .map(|p| {
            sasakian_residuals(&b, &random_field(&mut rng), &random_field(&mut rng), p)
                .unwrap()
                .max_abs()
        })
        .fold(0.0, f64::max);
    assert!(worst > 1e-8, "negative control passed: {worst}");
}

#[test]
fn identity_has_no_torsion() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let p = Point::new(vec![0.3, 0.3, -0.1, 0.0, 0.2, 0.8]);
    let t = nijenhuis(
        b,
        &EndField::identity(6),
        &random_field(&mut rng),
        &random_field(&mut rng),
        &p,
    )
    .unwrap();
    assert!(t.amax() <= 1e-12);
}

#[test]
fn complex_structure_is_integrable() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in sample_points(&m.chart, 16, 9) {
        let n = nijenhuis(
            b,
            &b.J,
            &affine_field(&mut rng),
            &affine_field(&mut rng),
            &p,
        )
        .unwrap();
        assert!(n.amax() <= 1e-8);
    }
}

#[test]
fn torsion_of_g_is_antisymmetric() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let p = Point::new(vec![-0.5, 0.4, 0.2, 0.9, -0.1, 0.0]);
    let (x, y) = (random_field(&mut rng), random_field(&mut rng));
    let a = nijenhuis(b, &b.G, &x, &y, &p).unwrap();
    let c = nijenhuis(b, &b.G, &y, &x, &p).unwrap();
    assert!((a + c).amax() <= 1e-12);
}

#[test]
fn korkmaz_slots_vanish_and_others_do_not() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut off_slot: f64 = 0.0;
    for p in sample_points(&m.chart, 16, 11) {
        let (_, s) = m.structure(&p).unwrap();
        let x0 = VectorField::constant(s.horizontal(&random_vector(6, &mut rng)).as_slice());
        let y0 = VectorField::constant(s.horizontal(&random_vector(6, &mut rng)).as_slice());
        let x = random_field(&mut rng);
        assert!(tensor_S(b, &x0, &y0, &p).unwrap().amax() <= 1e-8);
        assert!(tensor_T(b, &x0, &y0, &p).unwrap().amax() <= 1e-8);
        assert!(tensor_S(b, &x, &b.U, &p).unwrap().amax() <= 1e-8);
        assert!(tensor_T(b, &x, &b.V, &p).unwrap().amax() <= 1e-8);
        let sv = tensor_S(b, &x0, &b.V, &p).unwrap().amax();
        let tu = tensor_T(b, &x0, &b.U, &p).unwrap().amax();
        off_slot = off_slot.max(sv + tu);
    }
    assert!(off_slot >= 1e-3);
}

#[test]
fn fundamental_forms() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for p in sample_points(&m.chart, 8, 12) {
        let (x, y) = (affine_field(&mut rng), affine_field(&mut rng));
        let r = fundamental_2form_residual(b, &x, &y, &p).unwrap();
        assert!(r.du_law.abs() <= 1e-8 && r.dv_law.abs() <= 1e-8);
        let d = fundamental_2form_residual(b, &x, &x, &p).unwrap();
        assert!(d.du_law.abs() <= 1e-12 && d.dv_law.abs() <= 1e-12);
    }
}

#[test]
fn structure_at_uses_standard_geometry() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    assert_eq!(m.sign, CurvatureSign::Standard);
    let p = Point::new(vec![0.0, 0.1, 0.2, 0.3, 0.4, 0.5]);
    let geom = b.geometry(&p, CurvatureSign::Standard).unwrap();
    let s = b.structure_at(&p, &geom).unwrap();
    assert!(s.d_sigma_uv.unwrap().abs() <= 1e-10);
}

#[test]
fn printed_normal_forms_do_not_hold() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for p in sample_points(&m.chart, 8, 13) {
        let (x, y) = (random_field(&mut rng), random_field(&mut rng));
        let n = normality_residuals_theorem1(b, &x, &y, &p).unwrap();
        worst = worst.max(n.max_abs());
    }
    assert!(worst > 1e-3);
}
