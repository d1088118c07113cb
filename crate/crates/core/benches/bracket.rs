use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mosaic_core::poly::{kauffman_bracket, kauffman_bracket_naive};
use mosaic_core::search::{build_endless, build_saturated, Closure, CrossingPattern};
use mosaic_core::Mosaic;

fn boards() -> Vec<(String, Mosaic)> {
    vec![
        ("endless5".into(), build_endless(2)),
        ("saturated5".into(), build_saturated(5, Closure::B, CrossingPattern::Alternating)),
        ("saturated6".into(), build_saturated(6, Closure::B, CrossingPattern::Alternating)),
    ]
}

fn bracket(c: &mut Criterion) {
    let mut g = c.benchmark_group("bracket");
    for (name, m) in boards() {
        g.bench_with_input(BenchmarkId::new("state_sum", &name), &m, |b, m| b.iter(|| black_box(kauffman_bracket_naive(m))));
        g.bench_with_input(BenchmarkId::new("transfer", &name), &m, |b, m| b.iter(|| black_box(kauffman_bracket(m))));
    }
    g.finish();
}

criterion_group!(benches, bracket);
criterion_main!(benches);
