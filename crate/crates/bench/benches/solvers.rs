use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pitchopt_bench::{sequence, triple, SEQUENCES};
use pitchopt_core::{
    build_graph, build_milp, exact_noise, profile_spectrum, solve_approx, solve_exact, solve_ga,
    GaConfig, MilpOptions, PitchCatalog, SolveOptions, SpectrumKernel,
};
use std::hint::black_box;

fn spectrum(c: &mut Criterion) {
    let cat = PitchCatalog::reference();
    let mut group = c.benchmark_group("spectrum");
    for text in SEQUENCES {
        let seq = sequence(text);
        let k = 3 * seq.len() / 2;
        group.bench_with_input(
            BenchmarkId::new("closed_form", seq.len()),
            &seq,
            |b, seq| b.iter(|| exact_noise(&profile_spectrum(black_box(seq), &cat, k).unwrap())),
        );
        let kernel = SpectrumKernel::new(&cat, seq.total_length(), k);
        group.bench_with_input(BenchmarkId::new("kernel", seq.len()), &seq, |b, seq| {
            b.iter(|| kernel.exact_noise(black_box(seq.types()), cat.lengths()))
        });
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    let opts = SolveOptions {
        threads: Some(1),
        ..SolveOptions::default()
    };
    for (n, lo, hi) in [(10, 1, 8), (10, 3, 4)] {
        let inst = triple(n, lo, hi);
        let id = format!("({n},{lo},{hi})");
        group.bench_function(BenchmarkId::new("exact", &id), |b| {
            b.iter(|| solve_exact(black_box(&inst), &opts).unwrap())
        });
        group.bench_function(BenchmarkId::new("approx", &id), |b| {
            b.iter(|| solve_approx(black_box(&inst), &opts).unwrap())
        });
    }
    let inst = triple(10, 1, 8);
    let cfg = GaConfig {
        population_size: 300,
        max_generations: 100,
        ..GaConfig::default()
    };
    group.bench_function("ga/(10,1,8)", |b| {
        b.iter(|| solve_ga(black_box(&inst), &cfg).unwrap())
    });
    group.finish();
}

fn models(c: &mut Criterion) {
    let mut group = c.benchmark_group("model");
    for n in [10, 15] {
        let inst = triple(n, 1, n - 2);
        group.bench_function(BenchmarkId::new("milp_build", n), |b| {
            b.iter(|| build_milp(black_box(&inst), 0, MilpOptions::default()).unwrap())
        });
        let period = inst.tire_length(0).unwrap();
        group.bench_function(BenchmarkId::new("graph_build", n), |b| {
            b.iter(|| build_graph(inst.catalog(), black_box(period), inst.harmonics()))
        });
        let g = build_graph(inst.catalog(), period, inst.harmonics());
        group.bench_function(BenchmarkId::new("count_paths", n), |b| {
            b.iter(|| g.count_paths(black_box(n)))
        });
    }
    group.finish();
}

criterion_group!(benches, spectrum, solvers, models);
criterion_main!(benches);
