use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rspec_core::{
    correlation_matrix, first_primes, primes_to_zeros_series, sector_sample, zeros_to_primes_series,
    CorrelationConfig, ZeroTable,
};

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

fn bench_sector(c: &mut Criterion) {
    let zeros = ZeroTable::fixture();
    c.bench_function("sector_sample p=541 N=1000", |b| b.iter(|| sector_sample(&zeros, 541, 1).unwrap()));
}

fn bench_matrix(c: &mut Criterion) {
    let zeros = ZeroTable::fixture();
    let primes = first_primes(100);
    let cfg = CorrelationConfig::default();
    let mut group = c.benchmark_group("correlation_matrix 100x100 N=1000");
    group.sample_size(10);
    for threads in [1, 2, 4, 8] {
        let p = pool(threads);
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, _| {
            b.iter(|| p.install(|| correlation_matrix(&zeros, &primes, &cfg).unwrap()))
        });
    }
    group.finish();
}

fn bench_duality(c: &mut Criterion) {
    let zeros = ZeroTable::fixture();
    let mut group = c.benchmark_group("duality");
    group.sample_size(10);
    group.bench_function("zeros_to_primes C=1000 [1.5,10.5] h=0.001", |b| {
        b.iter(|| zeros_to_primes_series(&zeros, 1000, 1.5, 10.5, 0.001).unwrap())
    });
    group.bench_function("primes_to_zeros X=1e4 [10,16] h=0.001", |b| {
        b.iter(|| primes_to_zeros_series(10_000, 10.0, 16.0, 0.001).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_sector, bench_matrix, bench_duality);
criterion_main!(benches);
