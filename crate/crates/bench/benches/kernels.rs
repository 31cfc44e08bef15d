use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use sympair_bench::{code, codewords, ENUMERATION_CASES};
use sympair_core::pair_metric::pair_weight_mask;
use sympair_core::spectrum::{pair_weight_distribution, EnumConfig};
use sympair_core::{pair_weight, Field};

fn field_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("field_mul");
    for q in [13u64, 256, 6561] {
        let f = Field::from_order(q).unwrap();
        let xs: Vec<u32> = (0..1024).map(|i| (i * 7919 % q) as u32).collect();
        group.throughput(Throughput::Elements(xs.len() as u64));
        group.bench_with_input(BenchmarkId::new("table", q), &xs, |b, xs| {
            b.iter(|| xs.iter().fold(1u32, |acc, &x| f.add_raw(f.mul_raw(acc, x), 1)))
        });
        let elems: Vec<_> = xs.iter().map(|&x| f.element(x as u64).unwrap()).collect();
        group.bench_with_input(BenchmarkId::new("reduction", q), &elems, |b, xs| {
            b.iter(|| xs.iter().fold(f.one(), |acc, &x| f.add(f.mul_reference(acc, x).unwrap(), f.one()).unwrap()))
        });
    }
    group.finish();
}

fn pair_weights(c: &mut Criterion) {
    let spec = code(13, 5, 11);
    let words = codewords(&spec, 1024);
    let masks: Vec<u64> =
        words.iter().map(|w| w.raw().iter().enumerate().fold(0u64, |m, (i, &v)| m | ((v != 0) as u64) << i)).collect();
    let n = spec.n() as u32;
    let mut group = c.benchmark_group("pair_weight");
    group.throughput(Throughput::Elements(words.len() as u64));
    group.bench_function("vector", |b| b.iter(|| words.iter().map(|w| pair_weight(black_box(w))).sum::<usize>()));
    group.bench_function("mask", |b| b.iter(|| masks.iter().map(|&m| pair_weight_mask(black_box(m), n)).sum::<u32>()));
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    for (q, k, m) in ENUMERATION_CASES {
        let spec = code(q, k, m);
        group.throughput(Throughput::Elements(q.pow(k as u32)));
        for jobs in [1usize, 4] {
            let cfg = EnumConfig { jobs: Some(jobs), ..EnumConfig::default() };
            group.bench_function(BenchmarkId::new(format!("q{q}_k{k}_m{m}"), format!("jobs{jobs}")), |b| {
                b.iter(|| pair_weight_distribution(black_box(&spec), &cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, field_mul, pair_weights, enumeration);
criterion_main!(benches);
