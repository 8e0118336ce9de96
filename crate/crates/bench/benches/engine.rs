use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use sasaki_bench::{heisenberg, point, vectors};
use sasaki_core::suites::run_on_model;
use sasaki_core::{Jet, Layout, ModelKind, PointGeometry, SuiteConfig};

fn jets(c: &mut Criterion) {
    let layout = Layout::get(6, 2);
    let a = &Jet::variable(&layout, 0, 0.3) + &Jet::variable(&layout, 4, -0.2).scale(2.0);
    let b = &Jet::variable(&layout, 2, 0.7) * &Jet::variable(&layout, 3, 0.1);
    c.bench_function("jet2 mul dim6", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b))
    });
    c.bench_function("jet2 recip dim6", |bench| {
        bench.iter(|| black_box(&a).recip())
    });
}

fn geometry(c: &mut Criterion) {
    let m = heisenberg();
    let p = point();
    c.bench_function("point geometry heisenberg", |bench| {
        bench.iter(|| PointGeometry::new(&m.g, black_box(&p), m.sign).unwrap())
    });
    let geom = m.geometry(&p).unwrap();
    let [x, y, z] = vectors();
    c.bench_function("riemann contraction", |bench| {
        bench.iter(|| geom.riemann(black_box(&x), black_box(&y), black_box(&z)))
    });
    c.bench_function("ricci via frame", |bench| {
        bench.iter(|| geom.ricci(black_box(&x), black_box(&y)))
    });
    c.bench_function("structure at point", |bench| {
        bench.iter(|| {
            m.bundle()
                .unwrap()
                .structure_at(black_box(&p), &geom)
                .unwrap()
        })
    });
}

fn suites(c: &mut Criterion) {
    let m = heisenberg();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for id in [
        "curvature-identities",
        "gh-curvature-symmetries",
        "flatness-probes",
    ] {
        let cfg = SuiteConfig {
            points: 8,
            ..SuiteConfig::new(ModelKind::Heisenberg, id)
        };
        group.bench_function(id, |bench| bench.iter(|| run_on_model(&m, &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, jets, geometry, suites);
criterion_main!(benches);
