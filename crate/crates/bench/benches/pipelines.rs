use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use liewedge_bench::SpanFixture;
use liewedge_core::catalog;
use liewedge_core::cones::{certify_span, DEFAULT_MAX_HALVINGS};
use liewedge_core::derivations::derivation_algebra;

fn derivations(c: &mut Criterion) {
    let entry = catalog::get("jacobi(2)").unwrap();
    c.bench_function("derivation_algebra/jacobi(2)", |b| b.iter(|| derivation_algebra(black_box(&entry.algebra.g))));
}

fn span(c: &mut Criterion) {
    for name in ["jacobi(1)", "jacobi(2)", "ex318"] {
        let fx = SpanFixture::plus_side(name);
        c.bench_function(&format!("certify_span/{name}"), |b| {
            b.iter(|| certify_span(&fx.query, &fx.subspace, black_box(&fx.witness), DEFAULT_MAX_HALVINGS).unwrap())
        });
    }
}

fn build(c: &mut Criterion) {
    for name in ["jacobi(2)", "jacobi(4)", "ex319(3)"] {
        c.bench_function(&format!("catalog/{name}"), |b| b.iter(|| catalog::get(black_box(name)).unwrap()));
    }
}

criterion_group!(benches, derivations, span, build);
criterion_main!(benches);
