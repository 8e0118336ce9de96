use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sasaki_core::curvature::christoffel;
use sasaki_core::linalg::{coordinate_basis, vector};
use sasaki_core::models::{
    calibrated_heisenberg, flat_kahler_model, random_unit_horizontal_with, random_vector,
    sample_points, sphere_model,
};
use sasaki_core::oracle::{christoffel_fd, relative_gap, FD_STEP};
use sasaki_core::{Error, Point};

#[test]
fn flat_model_has_no_curvature() {
    let m = flat_kahler_model();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in sample_points(&m.chart, 8, 1) {
        let geom = m.geometry(&p).unwrap();
        assert_eq!(geom.christoffel().max_abs(), 0.0);
        assert_eq!(geom.scalar_curvature(), 0.0);
        let (x, y, z) = (
            random_vector(6, &mut rng),
            random_vector(6, &mut rng),
            random_vector(6, &mut rng),
        );
        assert_eq!(geom.riemann(&x, &y, &z).amax(), 0.0);
        assert_eq!(geom.ricci(&x, &y), 0.0);
    }
}

#[test]
fn unit_five_sphere() {
    let m = sphere_model(5, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for p in sample_points(&m.chart, 16, 2) {
        let geom = m.geometry(&p).unwrap();
        assert!((geom.scalar_curvature() - 20.0).abs() <= 1e-6);
        let (x, y) = (random_vector(5, &mut rng), random_vector(5, &mut rng));
        assert!((geom.sectional(&x, &y).unwrap() - 1.0).abs() <= 1e-8);
    }
}

#[test]
fn sphere_of_radius_two() {
    let m = sphere_model(3, 2.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in sample_points(&m.chart, 8, 3) {
        let geom = m.geometry(&p).unwrap();
        let (x, y) = (random_vector(3, &mut rng), random_vector(3, &mut rng));
        assert!((geom.sectional(&x, &y).unwrap() - 0.25).abs() <= 1e-8);
    }
}

#[test]
fn heisenberg_christoffel_matches_oracle_at_origin() {
    let m = calibrated_heisenberg(42).unwrap();
    let p = Point::origin(6);
    let exact = christoffel(&m.g, &p).unwrap();
    let fd = christoffel_fd(&m.g, &p, FD_STEP).unwrap();
    assert!(exact.max_abs() > 0.1);
    assert!(relative_gap(&exact, &fd) <= 1e-5);
}

#[test]
fn sphere_christoffel_matches_oracle() {
    let m = sphere_model(5, 1.0).unwrap();
    for p in sample_points(&m.chart, 8, 4) {
        let exact = christoffel(&m.g, &p).unwrap();
        let fd = christoffel_fd(&m.g, &p, FD_STEP).unwrap();
        assert!(relative_gap(&exact, &fd) <= 1e-5);
    }
}

#[test]
fn parallel_vectors_span_no_plane() {
    let m = sphere_model(5, 1.0).unwrap();
    let geom = m.geometry(&Point::origin(5)).unwrap();
    let x = vector(&[1.0, 2.0, 0.0, 0.0, -1.0]);
    let err = geom.sectional(&x, &(&x * 3.0)).unwrap_err();
    assert!(matches!(err, Error::DegenerateSection { .. }));
}

#[test]
fn gh_sectional_contract() {
    let m = calibrated_heisenberg(42).unwrap();
    let p = Point::new(vec![0.2, -0.4, 0.1, 0.6, -0.3, 0.5]);
    let (geom, s) = m.structure(&p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = random_unit_horizontal_with(&geom, &s, &mut rng);
    assert!(geom.gh_sectional(&s, &x, 0.6, 0.8).is_ok());
    let vertical = &x + &s.U * 0.5;
    let not_horizontal =
        geom.gh_sectional(&s, &(&vertical / geom.norm2(&vertical).sqrt()), 1.0, 0.0);
    assert!(matches!(not_horizontal, Err(Error::ContractViolation(_))));
    let not_unit = geom.gh_sectional(&s, &(&x * 2.0), 1.0, 0.0);
    assert!(matches!(not_unit, Err(Error::ContractViolation(_))));
    let off_circle = geom.gh_sectional(&s, &x, 1.0, 1.0);
    assert!(matches!(off_circle, Err(Error::ContractViolation(_))));
}

#[test]
fn scalar_curvature_is_frame_independent() {
    let m = calibrated_heisenberg(42).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for p in sample_points(&m.chart, 4, 6) {
        let geom = m.geometry(&p).unwrap();
        let seeds: Vec<_> = (0..6).map(|_| random_vector(6, &mut rng)).collect();
        let rotated = geom.orthonormal_frame_from(&seeds).unwrap();
        assert!(
            (geom.scalar_curvature() - geom.scalar_curvature_in_frame(&rotated)).abs() <= 1e-10
        );
    }
}

#[test]
fn compatibility_on_heisenberg() {
    let m = calibrated_heisenberg(42).unwrap();
    for p in sample_points(&m.chart, 4, 7) {
        let geom = m.geometry(&p).unwrap();
        assert!(geom.compatibility_defect() <= 1e-12);
        assert!(geom.christoffel().symmetry_defect() == 0.0);
    }
}

#[test]
fn riemann_of_coordinate_basis_is_antisymmetric() {
    let m = calibrated_heisenberg(42).unwrap();
    let geom = m
        .geometry(&Point::new(vec![0.5, 0.1, -0.2, 0.3, 0.9, -0.7]))
        .unwrap();
    let e = coordinate_basis(6);
    for a in &e {
        for b in &e {
            for c in &e {
                for d in &e {
                    let r = geom.riemann_0_4(a, b, c, d);
                    assert!((r + geom.riemann_0_4(b, a, c, d)).abs() <= 1e-12);
                    assert!((r + geom.riemann_0_4(a, b, d, c)).abs() <= 1e-12);
                    assert!((r - geom.riemann_0_4(c, d, a, b)).abs() <= 1e-12);
                }
            }
        }
    }
}
