use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sasaki_core::models::{
    calibrate_heisenberg, calibrate_heisenberg_with_table, heisenberg_unchecked,
    random_unit_horizontal, random_vector, sample_points, HeisenbergConfig,
};
use sasaki_core::{Error, ModelKind, Point};

#[test]
fn one_passing_configuration_per_eta_scale() {
    let (cal, table) = calibrate_heisenberg_with_table(42).unwrap();
    let passing = table.passing();
    for half in [true, false] {
        let hits: Vec<_> = passing
            .iter()
            .filter(|e| e.config.eta_half == half)
            .collect();
        assert_eq!(hits.len(), 1, "eta_half={half}\n{}", table.render());
    }
    for e in &table.entries {
        if e.residual > table.tolerance {
            assert!(e.residual > 1e-3, "{} residual {:e}", e.config, e.residual);
        }
    }
    assert!(cal.config.eta_half);
    assert!(cal.residual <= 1e-8);
}

#[test]
fn passing_scales() {
    let (_, table) = calibrate_heisenberg_with_table(42).unwrap();
    for e in table.passing() {
        let (l, m) = if e.config.eta_half {
            (0.25, 0.25)
        } else {
            (0.5, 1.0)
        };
        assert!(
            (e.lambda - l).abs() <= 1e-6,
            "{} lambda {}",
            e.config,
            e.lambda
        );
        assert!((e.mu - m).abs() <= 1e-6, "{} mu {}", e.config, e.mu);
    }
}

#[test]
fn calibration_is_seed_independent() {
    let a = calibrate_heisenberg(42).unwrap();
    let b = calibrate_heisenberg(7).unwrap();
    assert_eq!(a.config, b.config);
    assert!((a.lambda - b.lambda).abs() <= 1e-9);
    assert!((a.mu - b.mu).abs() <= 1e-9);
}

#[test]
fn doubling_mu_breaks_nabla_u() {
    let cal = calibrate_heisenberg(42).unwrap();
    let m = heisenberg_unchecked(cal.lambda, 2.0 * cal.mu, cal.config).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for p in sample_points(&m.chart, 16, 1) {
        let (_, s) = m.structure(&p).unwrap();
        let x = random_vector(6, &mut rng);
        worst = worst.max((s.nabla_u(&x) + &s.G * &x).amax());
    }
    assert!(worst > 1e-3, "{worst}");
}

#[test]
fn nonpositive_scales_are_rejected() {
    let cfg = HeisenbergConfig::all(true)[0];
    assert!(heisenberg_unchecked(0.0, 1.0, cfg).is_err());
    assert!(heisenberg_unchecked(1.0, -1.0, cfg).is_err());
}

#[test]
fn wrong_signs_fail_calibration_check() {
    let cal = calibrate_heisenberg(42).unwrap();
    let mut cfg = cal.config;
    cfg.signs[0] = -cfg.signs[0];
    let err = sasaki_core::models::heisenberg_model(cal.lambda, cal.mu, cfg).unwrap_err();
    assert!(matches!(err, Error::Calibration { best, .. } if best > 1e-3));
}

#[test]
fn unit_horizontal_draws() {
    let m = sasaki_core::models::calibrated_heisenberg(42).unwrap();
    let p = Point::new(vec![0.4, -0.1, 0.3, 0.8, -0.6, 0.2]);
    let (geom, s) = m.structure(&p).unwrap();
    let x = random_unit_horizontal(&m, &p, 1).unwrap();
    let y = random_unit_horizontal(&m, &p, 2).unwrap();
    for v in [&x, &y] {
        assert!(s.u_of(v).abs() <= 1e-10 && s.v_of(v).abs() <= 1e-10);
        assert!((geom.norm2(v) - 1.0).abs() <= 1e-10);
        assert!(geom.pair(v, &s.U).abs() <= 1e-10);
    }
    assert!(geom.gram(&x, &y) > 1e-6);
}

#[test]
fn flat_model_has_no_bundle() {
    let m = sasaki_core::models::flat_kahler_model();
    assert!(matches!(m.bundle(), Err(Error::NoContactBundle { .. })));
    assert!(random_unit_horizontal(&m, &Point::origin(6), 1).is_err());
}

#[test]
fn sphere_arguments_validated() {
    assert!(sasaki_core::models::sphere_model(1, 1.0).is_err());
    assert!(sasaki_core::models::sphere_model(3, 0.0).is_err());
}

#[test]
fn model_names_parse() {
    let names: HashSet<_> = [
        ModelKind::Heisenberg,
        ModelKind::FlatKahler,
        ModelKind::Sphere,
    ]
    .into_iter()
    .map(|k| {
        assert_eq!(k.name().parse::<ModelKind>().unwrap(), k);
        k.name()
    })
    .collect();
    assert_eq!(names.len(), 3);
    assert!(matches!(
        "torus".parse::<ModelKind>(),
        Err(Error::UnknownModel(_))
    ));
}
