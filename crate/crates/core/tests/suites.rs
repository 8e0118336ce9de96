use sasaki_core::suites::{suite_ids, REQUIRED_ANCHORS};
use sasaki_core::{run_suite, Error, ModelKind, SuiteConfig};

fn cfg(model: ModelKind, suite: &str, points: usize) -> SuiteConfig {
    SuiteConfig {
        points,
        ..SuiteConfig::new(model, suite)
    }
}

#[test]
fn identical_configs_give_identical_reports() {
    let c = cfg(ModelKind::Heisenberg, "all", 4);
    let a = run_suite(&c).unwrap().without_timestamp().to_json();
    let b = run_suite(&c).unwrap().without_timestamp().to_json();
    assert_eq!(a, b);
}

#[test]
fn seeds_change_residuals() {
    let mut c = cfg(ModelKind::Sphere, "engine-calibration", 4);
    let a = run_suite(&c).unwrap();
    c.seed = 43;
    let b = run_suite(&c).unwrap();
    assert_ne!(
        a.without_timestamp().to_json(),
        b.without_timestamp().to_json()
    );
}

#[test]
fn contact_suites_need_a_bundle() {
    let err = run_suite(&cfg(ModelKind::FlatKahler, "curvature-identities", 4)).unwrap_err();
    assert!(matches!(err, Error::NoContactBundle { .. }));
    assert!(err.to_string().contains("has no contact bundle"));
}

#[test]
fn invalid_configs() {
    assert!(matches!(
        run_suite(&cfg(ModelKind::Sphere, "curvature", 4)),
        Err(Error::UnknownSuite(_))
    ));
    assert!(matches!(
        run_suite(&cfg(ModelKind::Sphere, "engine-calibration", 0)),
        Err(Error::InvalidConfig(_))
    ));
    let mut c = cfg(ModelKind::Sphere, "engine-calibration", 4);
    c.tol = 0.0;
    assert!(matches!(run_suite(&c), Err(Error::InvalidConfig(_))));
}

#[test]
fn control_models_pass_the_engine_suite() {
    for m in [ModelKind::FlatKahler, ModelKind::Sphere] {
        let r = run_suite(&cfg(m, "all", 16)).unwrap();
        assert!(r.pass, "{}", r.to_text());
        assert_eq!(r.suites, vec!["engine-calibration".to_string()]);
        assert!(r.calibration.is_none());
    }
}

#[test]
fn heisenberg_report_shape() {
    let r = run_suite(&cfg(ModelKind::Heisenberg, "all", 4)).unwrap();
    assert_eq!(r.suites.len(), suite_ids().len());
    let cal = r.calibration.as_ref().unwrap();
    assert_eq!(cal.flags.eta_scale, 0.5);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    for key in [
        "schema_version",
        "model",
        "seed",
        "tol",
        "points",
        "calibration",
        "checks",
        "pass",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    for key in ["lambda", "mu", "flags"] {
        assert!(v["calibration"].get(key).is_some(), "{key}");
    }
    for key in ["id", "anchor", "max_residual", "mean_residual", "pass"] {
        assert!(v["checks"][0].get(key).is_some(), "{key}");
    }
    assert_eq!(r.pass, r.failures().is_empty());
}

#[test]
fn every_required_anchor_is_reported() {
    let r = run_suite(&cfg(ModelKind::Heisenberg, "all", 1)).unwrap();
    for a in REQUIRED_ANCHORS {
        assert!(
            r.checks.iter().any(|c| c.anchor == *a),
            "missing anchor {a}"
        );
    }
}

#[test]
fn printed_forms_that_fail_are_flagged() {
    let r = run_suite(&cfg(ModelKind::Heisenberg, "all", 8)).unwrap();
    for c in r.failures() {
        let note = c.note.as_deref().unwrap_or("");
        assert!(
            note.contains("printed"),
            "unexpected failure {}: {}",
            c.id,
            c.max_residual
        );
    }
    assert!(!r.pass);
}

#[test]
fn text_format_has_one_line_per_check() {
    let r = run_suite(&cfg(ModelKind::Sphere, "engine-calibration", 2)).unwrap();
    let text = r.to_text();
    assert_eq!(text.lines().count(), r.checks.len() + 1);
    assert!(text
        .lines()
        .take(r.checks.len())
        .all(|l| l.starts_with("PASS") || l.starts_with("FAIL")));
}
