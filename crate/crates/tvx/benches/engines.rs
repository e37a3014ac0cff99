//! Benchmarks comparing the data-parallel drivers against the sequential
//! fallback, plus the direct-composition saturation baseline.
//!
//! The parallel entry point is `par::map_vec` (rayon when the default
//! `parallel` feature is on); `par::map_vec_seq` is the always-sequential
//! path the feature falls back to.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use tvx::curve::refined_count_multi;
use tvx::diagram::{local_loop_identity, perturb_and_saturate};
use tvx::factorize::{commutator_lines, saturate_central};
use tvx::invariants::partitions_sorted;
use tvx::lattice::LatticeVec;
use tvx::series::SeriesContext;

/// Weight-vector sweep with |w1| + |w2| <= 5.
fn sweep_jobs() -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut jobs = Vec::new();
    for n1 in 1..5u32 {
        for n2 in 1..=(5 - n1) {
            for w1 in partitions_sorted(n1) {
                for w2 in partitions_sorted(n2) {
                    jobs.push((w1.clone(), w2));
                }
            }
        }
    }
    jobs
}

fn count_job(w1: &[u32], w2: &[u32]) -> tvx::laurent::QLaurent {
    refined_count_multi(
        &[LatticeVec::X, LatticeVec::Y],
        &[w1.to_vec(), w2.to_vec()],
        7,
        2,
    )
    .unwrap()
}

fn bench_tropical_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("tropical_sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter_batched(
            sweep_jobs,
            |jobs| {
                black_box(tvx::par::map_vec(jobs, |(w1, w2)| count_job(&w1, &w2)))
            },
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            sweep_jobs,
            |jobs| {
                black_box(tvx::par::map_vec_seq(jobs, |(w1, w2)| count_job(&w1, &w2)))
            },
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn bench_local_loops(c: &mut Criterion) {
    let diagram = perturb_and_saturate(&commutator_lines(1, 1), 3, 11).unwrap();
    let points: Vec<_> = diagram.points.keys().cloned().collect();
    let mut group = c.benchmark_group("local_loops");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            black_box(tvx::par::map_vec(points.clone(), |p| {
                local_loop_identity(&diagram, &p).unwrap()
            }))
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            black_box(tvx::par::map_vec_seq(points.clone(), |p| {
                local_loop_identity(&diagram, &p).unwrap()
            }))
        })
    });
    group.finish();
}

fn bench_central_saturation(c: &mut Criterion) {
    let mut group = c.benchmark_group("central_saturation");
    group.sample_size(10);
    group.bench_function("commutator_l1l1_k6", |b| {
        b.iter(|| {
            let ctx = SeriesContext::central_only(&["t1", "t2"], 6);
            black_box(saturate_central(&ctx, &commutator_lines(1, 1)).unwrap())
        })
    });
    group.bench_function("commutator_l2l1_k4", |b| {
        b.iter(|| {
            let ctx = SeriesContext::central_only(&["t1", "t2"], 4);
            black_box(saturate_central(&ctx, &commutator_lines(2, 1)).unwrap())
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_tropical_sweep,
    bench_local_loops,
    bench_central_saturation
);
criterion_main!(benches);
