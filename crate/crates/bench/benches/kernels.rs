use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pdmeans_bench::{pd_pair, small_campaign, symmetric, DIMS};
use pdmeans_core::densela::{pd_congruence, sym_eigen};
use pdmeans_core::means::{geometric_mean, power_mean};
use pdmeans_core::suite::{run_campaign, PropertyId};

fn eigen(c: &mut Criterion) {
    let mut g = c.benchmark_group("sym_eigen");
    for n in DIMS {
        let s = symmetric(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| {
            b.iter(|| sym_eigen(black_box(s)).unwrap())
        });
    }
    g.finish();
}

fn means(c: &mut Criterion) {
    let mut g = c.benchmark_group("means");
    for n in DIMS {
        let (a, b) = pd_pair(n, 3.0);
        g.bench_with_input(BenchmarkId::new("geometric", n), &(&a, &b), |bch, (a, b)| {
            bch.iter(|| geometric_mean(black_box(a), black_box(b), 0.5).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("power_p2", n), &(&a, &b), |bch, (a, b)| {
            bch.iter(|| power_mean(black_box(a), black_box(b), 0.5, 2.0).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("congruence", n), &(&a, &b), |bch, (a, b)| {
            bch.iter(|| pd_congruence(black_box(b), 0.25, black_box(a), 0.5).unwrap())
        });
    }
    g.finish();
}

fn campaign(c: &mut Criterion) {
    let mut g = c.benchmark_group("campaign");
    g.sample_size(10);
    let all = small_campaign(PropertyId::ALL.to_vec());
    g.bench_function("all_properties_10", |b| {
        b.iter(|| run_campaign(black_box(&all)).unwrap())
    });
    let p1 = small_campaign(vec![PropertyId::P1]);
    g.bench_function("p1_10", |b| b.iter(|| run_campaign(black_box(&p1)).unwrap()));
    g.finish();
}

criterion_group!(benches, eigen, means, campaign);
criterion_main!(benches);
