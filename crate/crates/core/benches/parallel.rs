//! Single worker versus the full rayon pool on the data-parallel kernels.
//! Build with `--no-default-features` to measure the sequential fallback itself.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mixvol::bezout::{search_b2_lower, sweep, CheckKind, SearchOptions};
use mixvol::bkk::{bkk_verify, dense_support};
use mixvol::mixed::{mixed_volume, BodyTuple};
use mixvol::par::with_jobs;
use mixvol::random::{random_polytope, trial_rng};

fn pools() -> [(&'static str, Option<usize>); 2] {
    [("one-thread", Some(1)), ("full-pool", None)]
}

fn polarization(c: &mut Criterion) {
    let mut rng = trial_rng(1, 0);
    let bodies: Vec<_> = (0..4).map(|_| (random_polytope(&mut rng, 4, 8), 1)).collect();
    let tuple = BodyTuple::new(bodies).unwrap();
    let mut g = c.benchmark_group("polarization-4d");
    g.sample_size(10);
    for (name, jobs) in pools() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_jobs(jobs, || mixed_volume(&tuple).unwrap()))
        });
    }
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("fenchel-sweep");
    g.sample_size(10);
    for (name, jobs) in pools() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_jobs(jobs, || sweep(CheckKind::Fenchel, 3, 16, 3, 40).unwrap()))
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let cube = mixvol::VPolytope::cube(3).unwrap();
    let opts = SearchOptions {
        budget: 2000,
        ..SearchOptions::default()
    };
    let mut g = c.benchmark_group("b2-search-cube");
    g.sample_size(10);
    for (name, jobs) in pools() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_jobs(jobs, || search_b2_lower(&cube, &opts).unwrap()))
        });
    }
    g.finish();
}

fn bkk(c: &mut Criterion) {
    let (s1, s2) = (dense_support(2), dense_support(3));
    let mut g = c.benchmark_group("bkk-dense-2-3");
    g.sample_size(10);
    for (name, jobs) in pools() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_jobs(jobs, || bkk_verify(&s1, &s2, 8, 5).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, polarization, sweeps, search, bkk);
criterion_main!(benches);
