use automorphic::oracle::{discriminant, eisenstein4, eta_quotient, j_invariant, EtaQuotientSpec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn series_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for window in [50i64, 100, 200] {
        let e4 = eisenstein4(window);
        let delta = discriminant(window);
        group.bench_with_input(BenchmarkId::new("mul", window), &window, |b, _| {
            b.iter(|| black_box(&e4) * black_box(&delta))
        });
        group.bench_with_input(BenchmarkId::new("div", window), &window, |b, _| {
            b.iter(|| black_box(&e4).div(black_box(&delta)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("eta24", window), &window, |b, &w| {
            let spec = EtaQuotientSpec::new(1, vec![(1, 24)]);
            b.iter(|| eta_quotient(black_box(&spec), w).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("j", window), &window, |b, &w| {
            b.iter(|| j_invariant(black_box(w)))
        });
    }
    group.finish();
}

criterion_group!(benches, series_ops);
criterion_main!(benches);
