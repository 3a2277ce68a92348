use std::hint::black_box;

use circseg::oracle::{mc_region_area_with, multiplicity_check_with};
use circseg::{build_triangle, construct_scene, region_spec, Execution, RegionId};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

const SAMPLES: u64 = 1 << 20;

fn region_area(c: &mut Criterion) {
    let scene = construct_scene(build_triangle(3.0, 4.0).unwrap()).unwrap();
    let spec = region_spec(RegionId::RC, &scene).unwrap();
    let domain = scene.circle_d();
    let mut group = c.benchmark_group("mc_region_area");
    group.throughput(Throughput::Elements(SAMPLES));
    group.sample_size(10);
    for exec in [Execution::Serial, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |bench, &exec| {
            bench.iter(|| mc_region_area_with(&spec, &domain, black_box(SAMPLES), 0, exec).unwrap())
        });
    }
    group.finish();
}

fn multiplicity(c: &mut Criterion) {
    let scene = construct_scene(build_triangle(3.0, 4.0).unwrap()).unwrap();
    let mut group = c.benchmark_group("multiplicity_check");
    group.throughput(Throughput::Elements(SAMPLES));
    group.sample_size(10);
    for exec in [Execution::Serial, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |bench, &exec| {
            bench.iter(|| multiplicity_check_with(&scene, black_box(SAMPLES), 0, 5e-9, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, region_area, multiplicity);
criterion_main!(benches);
