use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbs_core::insights::louvain;
use sbs_core::metrics::betweenness_all;
use sbs_core::{build_network, filter_network, CoocNetwork, TokenStream};

/// Zipf-ish synthetic documents over a vocabulary of `vocab` words.
fn streams(docs: usize, len: usize, vocab: usize, seed: u64) -> Vec<TokenStream> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..docs)
        .map(|d| {
            let tokens = (0..len)
                .map(|_| {
                    let u: f64 = rng.gen_range(0.0..1.0);
                    format!("w{}", ((vocab as f64).powf(u) as usize).min(vocab - 1))
                })
                .collect();
            TokenStream {
                doc_id: d.to_string(),
                tokens,
                weight: if rng.gen_bool(0.2) { 2.0 } else { 1.0 },
            }
        })
        .collect()
}

fn network(nodes: usize) -> CoocNetwork {
    filter_network(&build_network(&streams(nodes, 80, nodes, 1), 5), 2.0)
}

fn bench_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_network");
    for docs in [100, 1000] {
        let input = streams(docs, 200, 2000, 7);
        group.bench_with_input(BenchmarkId::from_parameter(docs), &input, |b, s| {
            b.iter(|| build_network(black_box(s), 7))
        });
    }
    group.finish();
}

fn bench_betweenness(c: &mut Criterion) {
    let mut group = c.benchmark_group("betweenness");
    group.sample_size(10);
    for nodes in [200, 800] {
        let net = network(nodes);
        group.bench_with_input(BenchmarkId::from_parameter(net.node_count()), &net, |b, n| {
            b.iter(|| betweenness_all(black_box(n)))
        });
    }
    group.finish();
}

fn bench_louvain(c: &mut Criterion) {
    let mut group = c.benchmark_group("louvain");
    for nodes in [200, 800] {
        let net = network(nodes);
        group.bench_with_input(BenchmarkId::from_parameter(net.node_count()), &net, |b, n| {
            b.iter(|| louvain(black_box(n), 3))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_build, bench_betweenness, bench_louvain);
criterion_main!(benches);
