use std::hint::black_box;

use ampsum_core::{apply_circuit, build_partial_sum_circuit, extract_unitary, state_from_reals};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for n in [8usize, 16, 20] {
        let m = (1usize << n) - 3;
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, &m| {
            b.iter(|| build_partial_sum_circuit(black_box(m), n).unwrap())
        });
    }
    group.finish();
}

fn simulate(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_circuit");
    group.sample_size(20);
    for n in [12usize, 16] {
        let circuit = build_partial_sum_circuit((1 << n) - 3, n).unwrap();
        let samples: Vec<f64> = (0..1usize << n).map(|k| (k as f64).sin()).collect();
        let state = state_from_reals(&samples, true).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &state, |b, s| {
            b.iter(|| apply_circuit(&circuit, black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn unitary(c: &mut Criterion) {
    let circuit = build_partial_sum_circuit(201, 8).unwrap();
    c.bench_function("extract_unitary/8", |b| b.iter(|| extract_unitary(black_box(&circuit)).unwrap()));
}

criterion_group!(benches, build, simulate, unitary);
criterion_main!(benches);
