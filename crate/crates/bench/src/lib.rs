//! Criterion benchmarks for stream construction and each partitioning heuristic.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion, Throughput};
use streamcut_core::{
    build_stream, generate, predict_random_degree, run_on_graph, Algorithm, Graph, OrderKind,
    RunSpec, StreamOrder, SyntheticSpec,
};

pub const BENCH_VERTICES: u32 = 20_000;

pub fn bench_graph() -> Graph {
    generate(&SyntheticSpec::new(BENCH_VERTICES, 2.0, 2.0, 1)).expect("valid synthetic spec")
}

pub fn benchmarks(c: &mut Criterion) {
    let graph = bench_graph();

    let mut streams = c.benchmark_group("stream");
    streams.throughput(Throughput::Elements(graph.edge_count() as u64));
    for kind in OrderKind::ALL {
        streams.bench_with_input(BenchmarkId::from_parameter(kind), &kind, |b, &kind| {
            b.iter(|| build_stream(black_box(&graph), StreamOrder::new(kind, 7)))
        });
    }
    streams.finish();

    let stream = build_stream(&graph, StreamOrder::new(OrderKind::Rnd, 7));
    let mut runs = c.benchmark_group("partition");
    runs.throughput(Throughput::Elements(graph.edge_count() as u64));
    runs.sample_size(10);
    for algorithm in Algorithm::ALL {
        for p in [8u32, 48] {
            runs.bench_with_input(
                BenchmarkId::new(algorithm.name(), p),
                &(algorithm, p),
                |b, &(algorithm, p)| {
                    b.iter(|| run_on_graph(&graph, &stream, RunSpec::new(algorithm, p, 3)).unwrap())
                },
            );
        }
    }
    runs.finish();

    c.bench_function("predict_random_degree", |b| {
        b.iter(|| predict_random_degree(black_box(&graph), 48))
    });
}
