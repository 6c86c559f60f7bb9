//! Parallel vs single-worker state sums. Build with `--no-default-features`
//! to time the plain iterator fallback instead of a one-thread pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use symknot::bracket::{kauffman_bracket_with, BracketEngine};
use symknot::config::Caps;
use symknot::refined::refined_w;
use symknot::spin::{normalized_i_with, potts_float, SpinEngine, DEFAULT_TOL};
use symknot::twist::twist;
use symknot::{with_threads, Diagram};

fn d4() -> Diagram {
    Diagram::parse(include_str!("../fixtures/d4.sud")).unwrap()
}

fn paths() -> [(&'static str, Option<usize>); 2] {
    [("parallel", None), ("sequential", Some(1))]
}

fn bracket(c: &mut Criterion) {
    let d = d4();
    let caps = Caps::default();
    let mut g = c.benchmark_group("bracket_state_sum_d4");
    g.sample_size(10);
    for (name, threads) in paths() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_threads(threads, || kauffman_bracket_with(black_box(&d), BracketEngine::StateSum, &caps).unwrap()))
        });
    }
    g.finish();
}

fn refined(c: &mut Criterion) {
    let d = twist(&d4(), 2).unwrap();
    let mut g = c.benchmark_group("refined_w_d4_h2");
    g.sample_size(10);
    for (name, threads) in paths() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_threads(threads, || refined_w(black_box(&d)).unwrap()))
        });
    }
    g.finish();
}

fn spin(c: &mut Criterion) {
    let d = d4();
    let m = potts_float(3, -1, 0, DEFAULT_TOL).unwrap();
    let caps = Caps::default();
    let mut g = c.benchmark_group("potts3_enumerate_d4");
    g.sample_size(10);
    for (name, threads) in paths() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_threads(threads, || normalized_i_with(&m, black_box(&d), SpinEngine::Enumerate, &caps).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, bracket, refined, spin);
criterion_main!(benches);
