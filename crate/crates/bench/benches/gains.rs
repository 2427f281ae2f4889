//! Microbenchmarks for the per-intervention kernels.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use causalgain::experiments::example4_random_joint;
use causalgain::{
    expected_gain, jeffrey_divergence, realized_gain, select, Distribution, Intervention,
    JointCounts, Policy, Rng, TrueWorld,
};

fn random_setup(k: usize) -> (TrueWorld, JointCounts) {
    let mut rng = Rng::from_seed(17);
    let world = example4_random_joint(k, &mut rng);
    let counts = world.sample_observations(200, 2.0, &mut rng).unwrap();
    (world, counts)
}

fn bench_jeffrey(c: &mut Criterion) {
    let p = Distribution::new(vec![0.4, 0.3, 0.2, 0.1]).unwrap();
    let q = Distribution::new(vec![0.25; 4]).unwrap();
    c.bench_function("jeffrey_divergence_k4", |b| {
        b.iter(|| jeffrey_divergence(black_box(&p), black_box(&q)))
    });
}

fn bench_gains(c: &mut Criterion) {
    let (world, counts) = random_setup(8);
    let iv = Intervention::SetX(3);
    c.bench_function("expected_gain_k8", |b| {
        b.iter(|| expected_gain(black_box(&counts), black_box(iv)))
    });
    c.bench_function("realized_gain_k8", |b| {
        b.iter(|| realized_gain(black_box(&counts), black_box(&world), black_box(iv)))
    });
}

fn bench_greedy_select(c: &mut Criterion) {
    let (_, counts) = random_setup(8);
    c.bench_function("greedy_select_k8", |b| {
        let mut rng = Rng::from_seed(3);
        b.iter(|| select(Policy::Greedy, black_box(&counts), &mut rng))
    });
}

criterion_group!(benches, bench_jeffrey, bench_gains, bench_greedy_select);
criterion_main!(benches);
