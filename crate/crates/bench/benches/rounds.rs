use std::hint::black_box;

use amoeba_bench::{idle_spinner_block, tumbler_rows};
use amoeba_core::engine::{propose, resolve, step};
use amoeba_core::model::build_local_view;
use amoeba_core::{ConflictPolicy, EnginePolicy, RandomnessSource};
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_step(c: &mut Criterion) {
    let (sys, alg) = idle_spinner_block(100);
    let rng = RandomnessSource::new(1);
    let policy = EnginePolicy::default();
    c.bench_function("step idle_spinner 10k", |b| {
        b.iter(|| step(black_box(&sys), &alg, &rng, &policy, 1).unwrap())
    });
}

fn bench_views(c: &mut Criterion) {
    let (sys, _) = idle_spinner_block(100);
    c.bench_function("local views 10k", |b| {
        b.iter(|| {
            sys.particles()
                .iter()
                .map(|p| build_local_view(black_box(&sys), p).occupied().len())
                .sum::<usize>()
        })
    });
}

fn bench_resolve(c: &mut Criterion) {
    let (sys, alg) = tumbler_rows(100);
    let rng = RandomnessSource::new(2);
    let proposals = propose(&sys, &alg, &rng, 1).unwrap();
    let mut group = c.benchmark_group("resolve tumbler 10k");
    for policy in [ConflictPolicy::LowestId, ConflictPolicy::Seeded] {
        group.bench_function(format!("{policy:?}"), |b| {
            b.iter(|| resolve(black_box(&sys), &proposals, policy, &rng, 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_step, bench_views, bench_resolve);
criterion_main!(benches);
