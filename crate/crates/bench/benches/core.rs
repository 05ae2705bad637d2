use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use khinchin_bench::{expansion, root};
use khinchin_core::{
    cf_expand, cf_from_interval, decimal_oracle, empirical_dist, kld, speed_value, GaussKuzmin,
    LogBase, SpeedMetric, TruncatedGaussKuzmin,
};

fn expand(c: &mut Criterion) {
    let mut g = c.benchmark_group("cf_expand");
    g.sample_size(10);
    for (r, d) in [(2, 3), (3, 5)] {
        let a = root(r, d);
        g.bench_with_input(BenchmarkId::new(format!("{r}^(1/{d})"), 1000), &a, |b, a| {
            b.iter(|| cf_expand(black_box(a), 1000).unwrap())
        });
    }
    g.finish();
}

fn from_interval(c: &mut Criterion) {
    let (lo, hi) = decimal_oracle(&root(2, 3), 1000).unwrap();
    c.bench_function("cf_from_interval/1000 digits", |b| {
        b.iter(|| cf_from_interval(black_box(&lo), black_box(&hi)).unwrap())
    });
}

fn divergence(c: &mut Criterion) {
    let cf = expansion(2, 3, 3000);
    let emp = empirical_dist(&cf, 3000).unwrap();
    let trunc = TruncatedGaussKuzmin::new(emp.maxn()).unwrap();
    c.bench_function("kld/gk/3000", |b| b.iter(|| kld(black_box(&emp), &GaussKuzmin).unwrap()));
    c.bench_function("kld/truncated/3000", |b| b.iter(|| kld(black_box(&emp), &trunc).unwrap()));
}

fn speed(c: &mut Criterion) {
    let a = root(2, 3);
    let cf = cf_expand(&a, 1200).unwrap();
    let mut g = c.benchmark_group("speed_value");
    for metric in [SpeedMetric::Khinchin, SpeedMetric::NewSpeed] {
        g.bench_function(format!("{metric}/n=1000"), |b| {
            b.iter(|| speed_value(&a, &cf, black_box(1000), metric, LogBase::E).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, expand, from_interval, divergence, speed);
criterion_main!(benches);
