use std::collections::BTreeMap;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use treebias::analytic::{pvis_exact, PowerLawModel};
use treebias::graphgen::configuration_model;
use treebias::harness::validate_bounds;
use treebias::sampler::bfs_tree;
use treebias::stats::{ccdf, fit_gamma_mle, fit_gamma_regression};
use treebias_bench::{desk_graph, power_law_draws};

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("configuration_model");
    group.sample_size(20);
    for n in [10_000usize, 100_000] {
        let degrees = power_law_draws(2.5, n, n as u64 - 1, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &degrees, |b, d| {
            b.iter(|| configuration_model(black_box(d), 7, true).unwrap())
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let g = desk_graph(2.5, 100_000, 1);
    let mut seed = 0;
    c.bench_function("bfs_tree/100k", |b| {
        b.iter(|| {
            seed += 1;
            bfs_tree(&g, (seed as usize * 7919) % g.vertex_count(), seed).unwrap()
        })
    });
}

fn analytic(c: &mut Criterion) {
    let m = PowerLawModel::unbounded(2.5).unwrap();
    c.bench_function("pvis_exact/100_point_grid", |b| {
        b.iter(|| {
            (1..=100)
                .map(|i| pvis_exact(&m, f64::from(i) / 100.0).unwrap().raw)
                .sum::<f64>()
        })
    });
    c.bench_function("validate_bounds/5_gammas", |b| {
        b.iter(|| validate_bounds(&[2.1, 2.3, 2.5, 2.7, 2.9], 100).unwrap())
    });
}

fn fitting(c: &mut Criterion) {
    let draws = power_law_draws(2.5, 1_000_000, 1_000_000, 3);
    let mut hist = BTreeMap::new();
    for &d in &draws {
        *hist.entry(d).or_insert(0u64) += 1;
    }
    let curve = ccdf(&hist).unwrap();
    let mut group = c.benchmark_group("fit_1m");
    group.sample_size(10);
    group.bench_function("mle", |b| {
        b.iter(|| fit_gamma_mle(black_box(&draws), 10).unwrap())
    });
    group.bench_function("regression_with_bootstrap", |b| {
        b.iter(|| fit_gamma_regression(black_box(&curve), 10).unwrap())
    });
    group.finish();
}

criterion_group!(benches, generation, sampling, analytic, fitting);
criterion_main!(benches);
