use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use finmarkov::causal::{default_timing, expand_ah_model};
use finmarkov::ci::{semigraphoid_closure, Symbols};
use finmarkov::exchange::{build_ah_joint, grid_generators, invariance_residuals};
use finmarkov::markov::{check_ordered_markov, factorize, local_markov_checks, recompose};
use finmarkov::{random, CIStatement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bench_markov(c: &mut Criterion) {
    let mut r = ChaCha8Rng::seed_from_u64(10);
    let m = random::model(&mut r, 6, 2);
    let p = recompose(&m, &random::assignment(&mut r, &m, 3, 0.2)).unwrap();
    let tau = default_timing(&m).unwrap();
    c.bench_function("markov/local", |b| b.iter(|| local_markov_checks(black_box(&p), &m).unwrap()));
    c.bench_function("markov/factorize", |b| b.iter(|| factorize(black_box(&p), &m, &tau).unwrap()));
}

fn bench_ah(c: &mut Criterion) {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    let mut group = c.benchmark_group("aldous_hoover");
    group.sample_size(10);
    for n in [2, 3] {
        let spec = random::ah_spec(&mut r, n, n, 2, 0.2);
        group.bench_with_input(BenchmarkId::new("build_exposed", n), &n, |b, _| {
            b.iter(|| build_ah_joint(black_box(&spec), true).unwrap())
        });
        let observed = build_ah_joint(&spec, false).unwrap();
        let gens = grid_generators(n, n);
        group.bench_with_input(BenchmarkId::new("invariance", n), &n, |b, _| {
            b.iter(|| invariance_residuals(black_box(&observed), &gens).unwrap())
        });
        let exposed = build_ah_joint(&spec, true).unwrap();
        let m = expand_ah_model(n);
        let tau = default_timing(&m).unwrap();
        group.bench_with_input(BenchmarkId::new("ordered_markov", n), &n, |b, _| {
            b.iter(|| check_ordered_markov(black_box(&exposed), &m, &tau, 1e-9).unwrap())
        });
    }
    group.finish();
}

fn bench_closure(c: &mut Criterion) {
    let ground: Symbols = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
    let axioms = vec![
        CIStatement::new(["a"], ["b", "c"], ["d"]).unwrap(),
        CIStatement::new(["b"], ["e"], ["c"]).unwrap(),
    ];
    c.bench_function("semigraphoid_closure/5-symbols", |b| {
        b.iter(|| semigraphoid_closure(black_box(&axioms), &ground, 100_000).unwrap())
    });
}

criterion_group!(benches, bench_markov, bench_ah, bench_closure);
criterion_main!(benches);
