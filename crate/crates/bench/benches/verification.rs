//! Benchmarks for the hot paths: subcube enumeration, coverage sweeps,
//! partition hit checks, and game playouts.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use cubepair_core::base;
use cubepair_core::constructions::{bin_ps, rotating_q9_4_demo};
use cubepair_core::cube::SubcubeIter;
use cubepair_core::game::{play_random_batch, MakerPolicy};
use cubepair_core::partitions::{half_plus1, verify_hit_property};
use cubepair_core::verify::{first_uncovered, first_uncovered_serial};

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate 5-subcubes of Q12", |b| {
        b.iter(|| black_box(SubcubeIter::new(12, 5).count()))
    });
}

fn bench_coverage(c: &mut Criterion) {
    let binps = bin_ps(&base::bv_3()).expect("builds");
    c.bench_function("coverage binps(12,5) serial", |b| {
        b.iter(|| black_box(first_uncovered_serial(12, 5, binps.edges())))
    });
    c.bench_function("coverage binps(12,5) parallel", |b| {
        b.iter(|| black_box(first_uncovered(12, 5, binps.edges())))
    });
    let demo = rotating_q9_4_demo();
    c.bench_function("coverage rotating Q(9,4)", |b| {
        b.iter(|| black_box(first_uncovered_serial(9, 4, demo.edges())))
    });
}

fn bench_partitions(c: &mut Criterion) {
    let (even, _) = half_plus1(3).expect("builds");
    c.bench_function("hit property Q8 cells at dim 5", |b| {
        b.iter(|| black_box(verify_hit_property(&even, 5)))
    });
}

fn bench_games(c: &mut Criterion) {
    let binps = bin_ps(&base::bv_3()).expect("builds");
    c.bench_function("one random game on Q(12,5)", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed += 1;
            black_box(
                cubepair_core::game::play(12, 5, &binps, &MakerPolicy::Random { seed }).unwrap(),
            )
        })
    });
    c.bench_function("batch of 32 games on Q(12,5)", |b| {
        b.iter(|| black_box(play_random_batch(12, 5, &binps, 32, 9).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_enumeration,
    bench_coverage,
    bench_partitions,
    bench_games
);
criterion_main!(benches);
