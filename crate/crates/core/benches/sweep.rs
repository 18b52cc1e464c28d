//! Parallel vs sequential grid sweeps: evaluating an associated weight and
//! a grid conjugate over a large argument grid.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use weightconj::assoc::AssociatedWeight;
use weightconj::conjugate::{lower_conj_eval, ConjOptions};
use weightconj::extreal::ExtReal::Finite;
use weightconj::parallel::{map_slice, map_slice_seq};
use weightconj::sequences::{WeightSequence, DEFAULT_DEPTH};
use weightconj::weightfn::WeightFunction;

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| 100.0 * i as f64 / (n - 1) as f64).collect()
}

fn bench_assoc_sweep(c: &mut Criterion) {
    let w = AssociatedWeight::new(WeightSequence::gevrey(1.0, DEFAULT_DEPTH).unwrap()).unwrap();
    let mut group = c.benchmark_group("assoc-eval-sweep");
    for n in [1_000usize, 100_000] {
        let ts = grid(n);
        group.bench_with_input(BenchmarkId::new("parallel", n), &ts, |b, ts| {
            b.iter(|| black_box(map_slice(ts, |&t| w.eval(Finite(t)).unwrap())))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &ts, |b, ts| {
            b.iter(|| black_box(map_slice_seq(ts, |&t| w.eval(Finite(t)).unwrap())))
        });
    }
    group.finish();
}

fn bench_grid_conjugate_sweep(c: &mut Criterion) {
    let f = WeightFunction::associated(
        AssociatedWeight::new(WeightSequence::gevrey(1.0, DEFAULT_DEPTH).unwrap()).unwrap(),
    );
    let opts = ConjOptions {
        force_grid: true,
        ..ConjOptions::default()
    };
    let ts = grid(64);
    let mut group = c.benchmark_group("grid-conjugate-sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            black_box(map_slice(&ts, |&t| {
                lower_conj_eval(&f, &f, Finite(t), &opts).unwrap()
            }))
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            black_box(map_slice_seq(&ts, |&t| {
                lower_conj_eval(&f, &f, Finite(t), &opts).unwrap()
            }))
        })
    });
    group.finish();
}

criterion_group!(benches, bench_assoc_sweep, bench_grid_conjugate_sweep);
criterion_main!(benches);
