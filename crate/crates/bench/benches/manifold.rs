//! Benchmarks for the hot paths: affinity calibration, one SNE descent
//! run, LLE weight solving, all-pairs Dijkstra and K-means.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mvmanifold::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn random_matrix(n: usize, p: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(n, p, |_, _| rng.sample(StandardNormal))
}

fn blobs(n: usize, d: usize, k: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(n, d, |i, j| {
        let center = ((i * k / n + j) % k) as f64 * 8.0;
        center + rng.sample::<f64, _>(StandardNormal)
    })
}

fn bench_affinities(c: &mut Criterion) {
    let x = random_matrix(200, 20, 1);
    c.bench_function("joint_affinities_n200_perp30", |b| {
        b.iter(|| joint_affinities(black_box(&x), 30.0).unwrap())
    });
}

fn bench_sne_descent(c: &mut Criterion) {
    let ds = MultiViewDataset::new(
        vec![random_matrix(150, 10, 2), random_matrix(150, 10, 3)],
        None,
    )
    .unwrap();
    let cfg = SneConfig {
        perplexity: 20.0,
        n_iter: 50,
        seed: 1,
        ..SneConfig::default()
    };
    c.bench_function("multisne_n150_m2_iters50", |b| {
        b.iter(|| {
            run_multisne(
                black_box(&ds),
                &cfg,
                WeightMode::Fixed(ViewWeights::uniform(2)),
            )
            .unwrap()
        })
    });
}

fn bench_lle(c: &mut Criterion) {
    let x = random_matrix(300, 10, 4);
    c.bench_function("lle_n300_k10", |b| {
        b.iter(|| run_lle(black_box(&x), 10, 2).unwrap())
    });
}

fn bench_dijkstra(c: &mut Criterion) {
    let x = random_matrix(300, 5, 5);
    let graph = build_graph(&x, 10).unwrap();
    c.bench_function("all_pairs_dijkstra_n300_k10", |b| {
        b.iter(|| shortest_paths(black_box(&graph)))
    });
}

fn bench_kmeans(c: &mut Criterion) {
    let y = blobs(500, 2, 5, 6);
    c.bench_function("kmeans_n500_k5_restarts10", |b| {
        b.iter(|| kmeans(black_box(&y), 5, 10, 7).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_affinities, bench_sne_descent, bench_lle, bench_dijkstra, bench_kmeans
}
criterion_main!(benches);
