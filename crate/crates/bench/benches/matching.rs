use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use triplesim_bench::{bipartite_instance, lr_free_instance, lr_instance};
use triplesim_core::{
    dual_simulation, graph_simulation, match_plus, maximum_matching, triple_simulation,
};

const SIZES: [usize; 4] = [1_000, 2_000, 4_000, 8_000];

fn global(c: &mut Criterion) {
    let mut group = c.benchmark_group("global");
    group.sample_size(10);
    for size in SIZES {
        let (q, g) = lr_instance(size);
        group.throughput(Throughput::Elements(size as u64));
        group.bench_with_input(BenchmarkId::new("triple", size), &size, |b, _| {
            b.iter(|| triple_simulation(black_box(&q), black_box(&g)))
        });
        group.bench_with_input(BenchmarkId::new("dual", size), &size, |b, _| {
            b.iter(|| dual_simulation(black_box(&q), black_box(&g)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sim", size), &size, |b, _| {
            b.iter(|| graph_simulation(black_box(&q), black_box(&g)).unwrap())
        });
    }
    group.finish();
}

fn local(c: &mut Criterion) {
    let mut group = c.benchmark_group("triple-local");
    group.sample_size(10);
    for size in [250, 500, 1_000] {
        let (q, g) = lr_free_instance(size, 4);
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| match_plus(black_box(&q), black_box(&g)))
        });
    }
    group.finish();
}

fn hopcroft_karp(c: &mut Criterion) {
    let mut group = c.benchmark_group("hopcroft-karp");
    for side in [16, 128, 1_024, 8_192] {
        let bg = bipartite_instance(side, 3);
        group.throughput(Throughput::Elements(bg.edge_count() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(side), &side, |b, _| {
            b.iter(|| maximum_matching(black_box(&bg)))
        });
    }
    group.finish();
}

criterion_group!(benches, global, local, hopcroft_karp);
criterion_main!(benches);
