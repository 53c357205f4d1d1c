use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gradmf::collection::{check_collection, default_labels};
use gradmf::mutation::serre_check;
use gradmf::hom_dim;
use gradmf_bench::{collection, nested_cone, params};

fn hom(c: &mut Criterion) {
    let mut g = c.benchmark_group("hom_dim");
    for mu in [2usize, 3] {
        let x = nested_cone(mu);
        let e = &collection(mu)[0];
        g.bench_with_input(BenchmarkId::new("cone_self", mu), &mu, |b, _| {
            b.iter(|| hom_dim(black_box(&x), black_box(&x), 0).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("rank_one", mu), &mu, |b, _| {
            b.iter(|| hom_dim(black_box(e), black_box(e), 2).unwrap())
        });
    }
    g.finish();
}

fn collections(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_collection");
    g.sample_size(10);
    for mu in [2usize, 3] {
        let objs = collection(mu);
        let labels = default_labels(objs.len());
        g.bench_with_input(BenchmarkId::from_parameter(mu), &mu, |b, _| {
            b.iter(|| check_collection(black_box(&objs), &labels).unwrap())
        });
    }
    g.finish();
}

fn serre(c: &mut Criterion) {
    let mut g = c.benchmark_group("serre");
    g.sample_size(10);
    for mu in [2usize, 3] {
        let objs = collection(mu);
        let p = params(mu);
        g.bench_with_input(BenchmarkId::from_parameter(mu), &mu, |b, _| {
            b.iter(|| serre_check(black_box(&objs), 2 * mu, &p, 0).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, hom, collections, serre);
criterion_main!(benches);
