use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mmcc::{
    approx_4, approx_4_sparse, brute_force_opt, compute_clb, fixtures, planted_partition_graph,
    run_a, run_a_star, Graph, IntersectionTable, SynthSpec,
};

fn planted(flips: usize) -> Graph {
    planted_partition_graph(&SynthSpec {
        cliques: 10,
        clique_size: 10,
        flips,
        seed: 42,
    })
    .expect("valid spec")
}

fn lower_bound(c: &mut Criterion) {
    let mut group = c.benchmark_group("clb");
    for flips in [0, 250, 1000] {
        let g = planted(flips);
        group.bench_with_input(BenchmarkId::new("table", flips), &g, |b, g| {
            b.iter(|| IntersectionTable::build(black_box(g)).unwrap())
        });
        let table = IntersectionTable::build(&g).unwrap();
        group.bench_with_input(BenchmarkId::new("bisection", flips), &g, |b, g| {
            b.iter(|| compute_clb(black_box(g), &table).bound)
        });
    }
    group.finish();
}

fn approximation(c: &mut Criterion) {
    let mut group = c.benchmark_group("approx4");
    for flips in [0, 250, 1000] {
        let g = planted(flips);
        let table = IntersectionTable::build(&g).unwrap();
        group.bench_with_input(BenchmarkId::new("dense", flips), &g, |b, g| {
            b.iter(|| approx_4(black_box(g), &table))
        });
        group.bench_with_input(BenchmarkId::new("sparse", flips), &g, |b, g| {
            b.iter(|| approx_4_sparse(black_box(g)))
        });
    }
    group.finish();
}

fn greedy(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy");
    for flips in [0, 250, 1000] {
        let g = planted(flips);
        group.bench_with_input(BenchmarkId::new("A", flips), &g, |b, g| {
            b.iter(|| run_a(black_box(g)).phi)
        });
        group.bench_with_input(BenchmarkId::new("A*", flips), &g, |b, g| {
            b.iter(|| run_a_star(black_box(g)).0.phi)
        });
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let g = fixtures::hub_and_triangle();
    c.bench_function("exact/hub7", |b| {
        b.iter(|| brute_force_opt(black_box(&g)).unwrap().opt)
    });
}

criterion_group!(benches, lower_bound, approximation, greedy, exhaustive);
criterion_main!(benches);
