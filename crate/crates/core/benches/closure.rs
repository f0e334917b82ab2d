use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use tiedmon::ramified::{diagram_family_generators, family_generators, DiagramFamily, Family};
use tiedmon::sizes::two_balanced_count;
use tiedmon::{closure, closure_sequential, Diagram, Ramified};

const LIMIT: usize = 1_000_000;

fn brauer(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure/Br");
    for n in [5, 6] {
        let gens = diagram_family_generators(DiagramFamily::Brauer, n).unwrap();
        let id = Diagram::identity(n).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, _| {
            b.iter(|| closure(id.clone(), black_box(&gens), LIMIT).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, _| {
            b.iter(|| closure_sequential(id.clone(), black_box(&gens), LIMIT).unwrap())
        });
    }
    group.finish();
}

fn ramified(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure/ramified");
    group.sample_size(10);
    for (family, n) in [(Family::RBr, 4), (Family::BBr, 5)] {
        let gens = family_generators(family, n).unwrap();
        let id = Ramified::identity(n).unwrap();
        let label = format!("{}_{n}", family.id());
        group.bench_function(BenchmarkId::new("parallel", &label), |b| {
            b.iter(|| closure(id.clone(), black_box(&gens), LIMIT).unwrap())
        });
        group.bench_function(BenchmarkId::new("sequential", &label), |b| {
            b.iter(|| closure_sequential(id.clone(), black_box(&gens), LIMIT).unwrap())
        });
    }
    group.finish();
}

fn balanced_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("U brute force");
    group.sample_size(10);
    for (n, k) in [(6, 1), (7, 2), (8, 2)] {
        group.bench_function(format!("U({n},{k})"), |b| b.iter(|| two_balanced_count(black_box(n), k).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, brauer, ramified, balanced_pairs);
criterion_main!(benches);
