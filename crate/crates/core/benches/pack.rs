use blpack::io::{generate, staircase_flaw, Family, GeneratorSpec};
use blpack::packer::{pack_with, SearchMode};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("pack");
    group.sample_size(10);
    let random =
        generate(&GeneratorSpec { family: Family::Random { n: 300, strip_width: 60, max_dim: 12 }, seed: 1 }).unwrap();
    let cases = [("random-300", random), ("staircase-256", staircase_flaw(256).unwrap())];
    for (name, inst) in &cases {
        for (label, mode) in [("sequential", SearchMode::Sequential), ("parallel", SearchMode::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, name), inst, |b, inst| {
                b.iter(|| black_box(pack_with(inst, mode).unwrap().height))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, modes);
criterion_main!(benches);
