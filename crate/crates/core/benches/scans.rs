//! Sequential vs rayon for the exhaustive scans, plus the raw lens recursion.

use std::hint::black_box;

use corrterm::lens::neg_correction_values;
use corrterm::{
    range_bound_scan, two_summand_scan, Jobs, LensCache, LensSpace, Progress, ScanOptions,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn modes() -> [(&'static str, Jobs); 2] {
    [
        ("sequential", Jobs::sequential()),
        ("parallel", Jobs::all()),
    ]
}

fn range_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("range_bound_scan");
    group.sample_size(10);
    for p_max in [60u64, 120] {
        for (name, jobs) in modes() {
            group.bench_with_input(BenchmarkId::new(name, p_max), &p_max, |b, &p_max| {
                b.iter(|| range_bound_scan(black_box(p_max), jobs, &Progress::silent()).unwrap())
            });
        }
    }
    group.finish();
}

fn two_summand(c: &mut Criterion) {
    let mut group = c.benchmark_group("two_summand_scan");
    group.sample_size(10);
    for (prune, label) in [(true, "pruned"), (false, "full")] {
        for (name, jobs) in modes() {
            let opts = ScanOptions { jobs, prune };
            group.bench_with_input(
                BenchmarkId::new(format!("{name}/{label}"), 100),
                &100u64,
                |b, &n| {
                    b.iter(|| two_summand_scan(black_box(n), &opts, &Progress::silent()).unwrap())
                },
            );
        }
    }
    group.finish();
}

fn recursion(c: &mut Criterion) {
    let mut group = c.benchmark_group("lens_values");
    let l = LensSpace::new(987, 610).unwrap();
    group.bench_function("descent/L(987,610)", |b| {
        b.iter(|| neg_correction_values(black_box(&l)))
    });
    group.bench_function("cache_cold/L(987,610)", |b| {
        b.iter(|| LensCache::new().neg_values(black_box(&l)))
    });
    let huge = LensSpace::new(i64::MAX, 1 << 62).unwrap();
    group.bench_function("single_index_bignum", |b| {
        b.iter(|| corrterm::d_neg_lens(black_box(&huge), 5).unwrap())
    });
    group.finish();
}

criterion_group!(benches, range_scan, two_summand, recursion);
criterion_main!(benches);
