use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use birkhoff_core::lattice::{chain_vector, ideal_lattice, proper_part};
use birkhoff_core::poset::{enumerate_posets, Poset};
use birkhoff_core::verify::{batch_verify, BatchConfig};

fn fence(n: usize) -> Poset {
    // zig-zag 0 < 1 > 2 < 3 > ...
    let covers: Vec<(usize, usize)> = (0..n - 1)
        .map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) })
        .collect();
    Poset::from_covers(n, &covers).unwrap()
}

fn criterion_benchmark(c: &mut Criterion) {
    c.bench_function("ideal_lattice_fence_20", |b| {
        let p = fence(20);
        b.iter(|| ideal_lattice(black_box(&p)).unwrap())
    });
    c.bench_function("chain_vector_boolean_8", |b| {
        let q = proper_part(&ideal_lattice(&Poset::antichain(8)).unwrap());
        b.iter(|| chain_vector(black_box(&q), 7).unwrap())
    });
    c.bench_function("enumerate_posets_6", |b| b.iter(|| enumerate_posets(black_box(6)).unwrap()));
    let mut group = c.benchmark_group("batch");
    group.sample_size(10);
    group.bench_function("batch_verify_5", |b| {
        b.iter(|| batch_verify(black_box(&BatchConfig::new(5))).unwrap())
    });
    group.finish();
}

criterion_group!(benches, criterion_benchmark);
criterion_main!(benches);
