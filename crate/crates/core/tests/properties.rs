use std::sync::OnceLock;

use proptest::prelude::*;
use sasaki_core::linalg::{pair, vector, Matrix};
use sasaki_core::models::calibrated_heisenberg;
use sasaki_core::suites::b_value;
use sasaki_core::{BCoefficients, Jet, Layout, ModelInstance, Point};

fn model() -> &'static ModelInstance {
    static M: OnceLock<ModelInstance> = OnceLock::new();
    M.get_or_init(|| calibrated_heisenberg(42).unwrap())
}

fn coord() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

fn vec6() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(coord(), 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jet_product_rule(a in vec6(), b in vec6(), p in vec6()) {
        let layout = Layout::get(6, 2);
        let lin = |c: &[f64]| {
            let mut j = Jet::constant(&layout, 0.0);
            for (i, ci) in c.iter().enumerate() {
                j = &j + &Jet::variable(&layout, i, p[i]).scale(*ci);
            }
            j
        };
        let (f, g) = (lin(&a), lin(&b));
        let fg = &f * &g;
        for i in 0..6 {
            let expect = f.derivative(i) * g.value() + f.value() * g.derivative(i);
            prop_assert!((fg.derivative(i) - expect).abs() <= 1e-12);
            for k in 0..6 {
                prop_assert!((fg.second_derivative(i, k) - (a[i] * b[k] + a[k] * b[i])).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn metric_pairing_is_bitwise_symmetric(x in vec6(), y in vec6(), p in vec6()) {
        let g = sasaki_core::linalg::matrix(&model().g.at(&p));
        let (x, y) = (vector(&x), vector(&y));
        prop_assert_eq!(pair(&g, &x, &y).to_bits(), pair(&g, &y, &x).to_bits());
    }

    #[test]
    fn b_is_linear(a in prop::collection::vec(-2.0..2.0f64, 11), b in prop::collection::vec(-2.0..2.0f64, 11),
                   p in vec6(), x in vec6(), y in vec6(), z in vec6(), w in vec6()) {
        let geom = model().geometry(&Point::new(p)).unwrap();
        let c1 = BCoefficients::new(a.try_into().unwrap()).unwrap();
        let c2 = BCoefficients::new(b.try_into().unwrap()).unwrap();
        let (x, y, z, w) = (vector(&x), vector(&y), vector(&z), vector(&w));
        let sum = b_value(&c1.add(&c2), &geom, &x, &y, &z, &w);
        let parts = b_value(&c1, &geom, &x, &y, &z, &w) + b_value(&c2, &geom, &x, &y, &z, &w);
        prop_assert!((sum - parts).abs() <= 1e-10 * (1.0 + parts.abs()));
    }

    #[test]
    fn split_reconstructs(p in vec6(), x in vec6()) {
        let (_, s) = model().structure(&Point::new(p)).unwrap();
        let x = vector(&x);
        let split = s.split(&x);
        prop_assert!((split.reconstruct(&s) - &x).amax() <= 1e-12);
        prop_assert!(s.is_horizontal(&split.horizontal));
    }

    #[test]
    fn sectional_invariant_under_plane_basis_change(p in vec6(), x in vec6(), y in vec6(),
                                                    m in prop::array::uniform4(-2.0..2.0f64)) {
        let det: f64 = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det.abs() > 0.1);
        let geom = model().geometry(&Point::new(p)).unwrap();
        let (x, y) = (vector(&x), vector(&y));
        prop_assume!(geom.gram(&x, &y) > 1e-3);
        let (x2, y2) = (&x * m[0] + &y * m[1], &x * m[2] + &y * m[3]);
        let k1 = geom.sectional(&x, &y).unwrap();
        let k2 = geom.sectional(&x2, &y2).unwrap();
        prop_assert!((k1 - k2).abs() <= 1e-8 * (1.0 + k1.abs()));
    }

    #[test]
    fn g_is_skew(p in vec6(), x in vec6(), y in vec6()) {
        let (_, s) = model().structure(&Point::new(p)).unwrap();
        let (x, y) = (vector(&x), vector(&y));
        let g: &Matrix = &s.g;
        prop_assert!((pair(g, &x, &(&s.G * &y)) + pair(g, &(&s.G * &x), &y)).abs() <= 1e-12);
        prop_assert!((pair(g, &x, &(&s.H * &y)) + pair(g, &(&s.H * &x), &y)).abs() <= 1e-12);
    }
}
