use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use indiff_core::checks::{
    check_continuity, check_independence, check_ip, check_weak_order, ContinuityKind,
    IndependenceVariant, SearchBudget,
};
use indiff_core::{GridSpec, PreferenceOracle, UtilityFunction};

fn eu() -> PreferenceOracle {
    PreferenceOracle::expected_utility(UtilityFunction::from_integers(&[0, 1, 2]).unwrap())
}

fn bench_order_and_ip(c: &mut Criterion) {
    let oracle = eu();
    let mut group = c.benchmark_group("grid");
    group.sample_size(20);
    for d in [4, 6, 8] {
        let grid = GridSpec::new(d, 3).unwrap();
        group.bench_with_input(BenchmarkId::new("weak_order", d), &grid, |b, grid| {
            b.iter(|| check_weak_order(&oracle, grid).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("ip", d), &grid, |b, grid| {
            b.iter(|| check_ip(&oracle, grid).unwrap())
        });
    }
    group.finish();
}

fn bench_independence(c: &mut Criterion) {
    let grid = GridSpec::new(4, 3).unwrap();
    let oracle = eu();
    let mut group = c.benchmark_group("independence");
    group.sample_size(10);
    for variant in [
        IndependenceVariant::Independence,
        IndependenceVariant::Betweenness,
    ] {
        group.bench_function(format!("{variant:?}"), |b| {
            b.iter(|| check_independence(&oracle, &grid, variant).unwrap())
        });
    }
    group.finish();
}

fn bench_continuity(c: &mut Criterion) {
    let hybrid = PreferenceOracle::hybrid(3).unwrap();
    let oracle = eu();
    let grid = GridSpec::new(3, 3).unwrap();
    let search = SearchBudget::default();
    let mut group = c.benchmark_group("continuity");
    group.sample_size(10);
    for kind in [
        ContinuityKind::GridOpenness,
        ContinuityKind::Mixture,
        ContinuityKind::Archimedean,
        ContinuityKind::Solvability,
    ] {
        group.bench_function(format!("eu/{kind:?}"), |b| {
            b.iter(|| check_continuity(&oracle, kind, &grid, &search).unwrap())
        });
        group.bench_function(format!("hybrid/{kind:?}"), |b| {
            b.iter(|| check_continuity(&hybrid, kind, &grid, &search).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_order_and_ip,
    bench_independence,
    bench_continuity
);
criterion_main!(benches);
