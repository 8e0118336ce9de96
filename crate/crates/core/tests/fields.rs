#![allow(clippy::needless_range_loop)]

use sasaki_core::models::{heisenberg_frame, sample_points};
use sasaki_core::oracle::{gradient_fd, hessian_fd, FD_STEP};
use sasaki_core::{
    exterior_d_1form, lie_bracket, metric_pair, wedge_1forms, Chart, Error, MetricTensor, OneForm,
    Point, ScalarField, VectorField, WedgeConvention,
};

fn chart6() -> Chart {
    Chart::new(&["x1", "y1", "x2", "y2", "x3", "y3"])
}

fn heisenberg() -> sasaki_core::ModelInstance {
    sasaki_core::models::calibrated_heisenberg(42).unwrap()
}

#[test]
fn product_of_coordinates() {
    let f = &ScalarField::coord(0) * &ScalarField::coord(1);
    let j = f
        .eval_jet2(&chart6(), &Point::new(vec![1.0, 2.0, 0.0, 0.0, 0.0, 0.0]))
        .unwrap();
    assert_eq!(j.value, 2.0);
    assert_eq!(j.gradient[0], 2.0);
    assert_eq!(j.gradient[1], 1.0);
    assert_eq!(j.hessian[0][1], 1.0);
    assert_eq!(j.hessian[1][0], 1.0);
    assert_eq!(j.hessian[0][0], 0.0);
}

#[test]
fn constant_has_zero_derivatives() {
    let f = ScalarField::constant(5.0);
    let j = f
        .eval_jet2(&chart6(), &Point::new(vec![0.4, -0.9, 0.1, 0.3, 0.2, -0.5]))
        .unwrap();
    assert_eq!(j.value, 5.0);
    assert!(j.gradient.iter().all(|&d| d == 0.0));
    assert!(j.hessian.iter().flatten().all(|&d| d == 0.0));
}

#[test]
fn wrong_point_dimension() {
    let f = ScalarField::coord(0);
    let err = f
        .eval_jet2(&chart6(), &Point::new(vec![0.0; 4]))
        .unwrap_err();
    assert!(matches!(
        err,
        Error::DimensionMismatch {
            expected: 6,
            got: 4
        }
    ));
}

#[test]
fn heisenberg_g55_matches_finite_differences() {
    let m = heisenberg();
    let f = m.g.components[4][4].clone();
    let p = Point::new(vec![0.3, -0.2, 0.7, 0.1, 0.0, 0.0]);
    let j = f.eval_jet2(&m.chart, &p).unwrap();
    let grad = gradient_fd(&f, &p, FD_STEP);
    let hess = hessian_fd(&f, &p, FD_STEP);
    let rel = |a: f64, b: f64| (a - b).abs() / 1f64.max(a.abs()).max(b.abs());
    for i in 0..6 {
        assert!(
            rel(j.gradient[i], grad[i]) <= 1e-5,
            "d{i}: {} vs {}",
            j.gradient[i],
            grad[i]
        );
        for k in 0..6 {
            assert!(rel(j.hessian[i][k], hess[i][k]) <= 1e-5);
        }
    }
}

#[test]
fn hessian_is_symmetric() {
    let x = ScalarField::coord;
    let f = (&(&x(0) * &x(3)) + &x(2).powi(3)).recip();
    let j = f
        .eval_jet2(&chart6(), &Point::new(vec![0.5, 0.1, 1.2, -0.7, 0.0, 0.3]))
        .unwrap();
    for i in 0..6 {
        for k in 0..6 {
            assert!((j.hessian[i][k] - j.hessian[k][i]).abs() <= 1e-12);
        }
    }
}

#[test]
fn coordinate_fields_commute() {
    let b = lie_bracket(
        &VectorField::coordinate(6, 0),
        &VectorField::coordinate(6, 1),
    )
    .unwrap();
    assert!(b
        .at(&[0.3, 0.1, -0.4, 0.9, 0.2, 0.0])
        .iter()
        .all(|&c| c == 0.0));
}

#[test]
fn bracket_with_itself_vanishes() {
    let [e1, ..] = heisenberg_frame();
    let b = lie_bracket(&e1, &e1).unwrap();
    assert!(b
        .at(&[0.3, 0.1, -0.4, 0.9, 0.2, 0.0])
        .iter()
        .all(|&c| c == 0.0));
}

#[test]
fn heisenberg_bracket_is_vertical() {
    let m = heisenberg();
    let [e1, _, e3, _] = heisenberg_frame();
    let br = lie_bracket(&e1, &e3).unwrap();
    for p in sample_points(&m.chart, 16, 9) {
        let (_, s) = m.structure(&p).unwrap();
        let v = sasaki_core::linalg::vector(&br.at(&p.coords));
        let split = s.split(&v);
        assert!(split.horizontal.amax() <= 1e-12);
        assert!(split.u_coeff.abs() + split.v_coeff.abs() > 1e-3);
    }
}

#[test]
fn flat_pairing_of_coordinate_field() {
    let g = MetricTensor::euclidean(6);
    let e = VectorField::coordinate(6, 0);
    let f = metric_pair(&g, &e, &e);
    for p in sample_points(&chart6(), 8, 1) {
        assert_eq!(f.eval(&p.coords), 1.0);
    }
}

#[test]
fn heisenberg_u_v_orthonormal() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let uv = metric_pair(&b.g, &b.U, &b.V);
    let uu = metric_pair(&b.g, &b.U, &b.U);
    for p in sample_points(&m.chart, 16, 3) {
        assert!(uv.eval(&p.coords).abs() <= 1e-12);
        assert!((uu.eval(&p.coords) - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn wedge_of_u_and_v_on_dual_fields() {
    let m = heisenberg();
    let b = m.bundle().unwrap();
    let w = wedge_1forms(&b.u, &b.v, WedgeConvention::Plain)(&b.U, &b.V);
    let half = wedge_1forms(&b.u, &b.v, WedgeConvention::Half)(&b.U, &b.V);
    for p in sample_points(&m.chart, 8, 4) {
        assert!((w.eval(&p.coords) - 1.0).abs() <= 1e-12);
        assert!((half.eval(&p.coords) - 0.5).abs() <= 1e-12);
    }
}

#[test]
fn wedge_of_form_with_itself_vanishes() {
    let [e1, e2, ..] = heisenberg_frame();
    let a = OneForm::new(vec![
        ScalarField::coord(1),
        ScalarField::one(),
        ScalarField::zero(),
        ScalarField::coord(0),
        ScalarField::zero(),
        ScalarField::constant(2.0),
    ]);
    let w = wedge_1forms(&a, &a, WedgeConvention::Plain)(&e1, &e2);
    for p in sample_points(&chart6(), 8, 5) {
        assert_eq!(w.eval(&p.coords), 0.0);
    }
}

#[test]
fn d_of_coordinate_form_vanishes() {
    let [e1, e2, e3, e4] = heisenberg_frame();
    let d = exterior_d_1form(&OneForm::coordinate(6, 0), WedgeConvention::Plain);
    for (x, y) in [(&e1, &e2), (&e1, &e3), (&e2, &e4), (&e3, &e4)] {
        let f = d(x, y);
        for p in sample_points(&chart6(), 8, 6) {
            assert!(f.eval(&p.coords).abs() <= 1e-14);
        }
    }
}

#[test]
fn evaluation_is_pure() {
    let m = heisenberg();
    for p in sample_points(&m.chart, 4, 7) {
        let a = m.g.at(&p.coords);
        let b = m.g.at(&p.coords);
        assert_eq!(a, b);
    }
}
