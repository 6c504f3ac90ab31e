use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use latcover::domain::{discretize_scale, Shape, WiredGraph};
use latcover::harmonic::green;
use latcover::isomorphism::{check_iso_marginal, MonteCarlo};
use latcover::parallel::{map_trials, Execution};
use latcover::rng::stream;
use latcover::walk::{run_to_cover, NoObserver, WalkConfig, Walker};

const EXECUTIONS: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn disc(scale: f64) -> WiredGraph {
    WiredGraph::new(&discretize_scale(&Shape::Disc, scale).unwrap()).unwrap()
}

fn cover_trials(c: &mut Criterion) {
    let graph = disc(20.0);
    let config = WalkConfig::default();
    let mut group = c.benchmark_group("cover_trials");
    group.sample_size(10);
    for (name, exec) in EXECUTIONS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                map_trials(exec, 32, |i| {
                    run_to_cover(&graph, &config, &mut stream(1, i as u64)).boundary_time
                })
            })
        });
    }
    group.finish();
}

fn field_sampling(c: &mut Criterion) {
    let graph = disc(12.0);
    let walker = Walker::new(&graph, &WalkConfig::default());
    let mut group = c.benchmark_group("local_time_fields");
    for (name, exec) in EXECUTIONS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                map_trials(exec, 256, |i| {
                    walker
                        .sample_field(2.0, &mut stream(2, i as u64), &mut NoObserver)
                        .unwrap()
                        .min()
                })
            })
        });
    }
    group.finish();
}

fn isomorphism_check(c: &mut Criterion) {
    let graph = disc(3.0);
    let g = green(&graph).unwrap();
    let config = WalkConfig::default();
    let mut group = c.benchmark_group("isomorphism_check");
    group.sample_size(20);
    for (name, exec) in EXECUTIONS {
        let mc = MonteCarlo::new(5_000, 3).with_execution(exec);
        group.bench_function(name, |b| {
            b.iter(|| check_iso_marginal(&graph, &g, &config, 1.0, black_box(&[4]), &mc).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, cover_trials, field_sampling, isomorphism_check);
criterion_main!(benches);
