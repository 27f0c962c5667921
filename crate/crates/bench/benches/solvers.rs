use apcover_bench::{planted, progression_free, random_tusc};
use apcover_core::below::{cap_below_decide, tusc_below_decide, ColoringMode};
use apcover_core::cap::cover_decide;
use apcover_core::xcap::{exact_cover_decide, exact_cover_minimize};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn planted_covers(c: &mut Criterion) {
    let mut g = c.benchmark_group("planted");
    g.sample_size(20);
    for n in [50, 100, 200] {
        let x = planted(n, 4, n as u64);
        g.bench_with_input(BenchmarkId::new("cover", n), &x, |b, x| {
            b.iter(|| cover_decide(black_box(x), 4).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("exact", n), &x, |b, x| {
            b.iter(|| exact_cover_decide(black_box(x), 4))
        });
    }
    g.finish();
}

fn small_minimize(c: &mut Criterion) {
    let x = progression_free(10, 1);
    c.bench_function("exact_minimize/no3ap10", |b| {
        b.iter(|| exact_cover_minimize(black_box(&x)))
    });
}

fn below_guarantee(c: &mut Criterion) {
    let mut g = c.benchmark_group("below");
    g.sample_size(10);
    let inst = random_tusc(16, 2, 10, 3, 5);
    let k = 2;
    for (name, mode) in [
        ("exhaustive", ColoringMode::Exhaustive),
        ("splitter", ColoringMode::Splitter),
        ("randomized", ColoringMode::Randomized { trials: None, delta: 1e-3, seed: 0 }),
    ] {
        g.bench_function(BenchmarkId::new("tusc", name), |b| {
            b.iter(|| tusc_below_decide(black_box(&inst), k, mode).unwrap())
        });
    }
    let x = progression_free(12, 0);
    g.bench_function("cap/no3ap12", |b| {
        b.iter(|| cap_below_decide(black_box(&x), 1, ColoringMode::Exhaustive).unwrap())
    });
    g.finish();
}

criterion_group!(benches, planted_covers, small_minimize, below_guarantee);
criterion_main!(benches);
