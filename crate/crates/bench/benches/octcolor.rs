use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use octcolor::adversary::{sample_algorithm, SampleAlgorithm};
use octcolor::gen::random3d;
use octcolor::verify::colorfulness_report_exhaustive;
use octcolor::{
    build_octant_cover, color_point_set, colorfulness_report, run_duel, validate_cover,
    BaseColorerConfig, StrategyOptions,
};
use octcolor_bench::{antichain, colored_set};

fn verifier(c: &mut Criterion) {
    let mut group = c.benchmark_group("verifier");
    group.sample_size(10);
    for n in [50, 100, 200] {
        let (set, coloring) = colored_set(n, 2, 7);
        group.bench_with_input(BenchmarkId::new("sweep", n), &n, |b, _| {
            b.iter(|| colorfulness_report(black_box(&set), black_box(&coloring)))
        });
    }
    for n in [20, 40] {
        let (set, coloring) = colored_set(n, 2, 7);
        group.bench_with_input(BenchmarkId::new("exhaustive", n), &n, |b, _| {
            b.iter(|| colorfulness_report_exhaustive(black_box(&set), black_box(&coloring)))
        });
    }
    group.finish();
}

fn cover(c: &mut Criterion) {
    let mut group = c.benchmark_group("cover");
    for n in [25, 100] {
        let set = antichain(n, 3);
        group.bench_with_input(BenchmarkId::new("build", n), &n, |b, _| {
            b.iter(|| build_octant_cover(black_box(&set)).unwrap())
        });
        let built = build_octant_cover(&set).unwrap();
        group.bench_with_input(BenchmarkId::new("validate", n), &n, |b, _| {
            b.iter(|| validate_cover(black_box(&built), 64))
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for (n, k) in [(100, 2), (100, 4), (200, 2)] {
        let set = random3d(n, 5);
        let cfg = BaseColorerConfig::default();
        group.bench_function(BenchmarkId::new(format!("k{k}"), n), |b| {
            b.iter(|| color_point_set(black_box(&set), k, &cfg).unwrap())
        });
    }
    group.finish();
}

fn duel(c: &mut Criterion) {
    let mut group = c.benchmark_group("duel");
    for alg in SampleAlgorithm::ALL {
        group.bench_function(format!("k2_d3_{alg}"), |b| {
            b.iter(|| {
                let mut player = sample_algorithm(alg, 1);
                run_duel(2, 3, player.as_mut(), StrategyOptions::default()).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, verifier, cover, pipeline, duel);
criterion_main!(benches);
