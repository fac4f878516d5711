use criterion::{black_box, criterion_group, criterion_main, Criterion};
use skewtensor::chow::schubert::lr_product;
use skewtensor::chow::x4_h_numbers;
use skewtensor::configurations::enumerate_pentads;
use skewtensor::count::Sweeps;
use skewtensor::modp::ModTheta;
use skewtensor::models::{ozeki_theta, rank2_locus, s5_theta, segre_cubic};
use skewtensor::rep::koszul::koszul_table;
use skewtensor::rep::{bott, FactorWeight, GLWeight};

fn schubert(c: &mut Criterion) {
    c.bench_function("lr_product s(2,1) s(2,1) in 4x4", |b| b.iter(|| lr_product(black_box(&[2, 1]), black_box(&[2, 1]), 4, 4)));
    c.bench_function("x4 h-numbers", |b| b.iter(|| x4_h_numbers().unwrap()));
}

fn cohomology(c: &mut Criterion) {
    let w = GLWeight { factors: vec![FactorWeight::new(vec![1, -2], vec![3, 0]), FactorWeight::new(vec![2, 0, -1], vec![1, 1])] };
    c.bench_function("bott on G(2,4) x G(3,5)", |b| b.iter(|| bott(black_box(&w))));
    c.bench_function("koszul table", |b| b.iter(koszul_table));
}

fn counting(c: &mut Criterion) {
    let mt = ModTheta::reduce(&s5_theta().unwrap(), 7).unwrap();
    let mut g = c.benchmark_group("counts");
    g.sample_size(10);
    g.bench_function("sweeps p = 7", |b| b.iter(|| Sweeps::run(black_box(&mt)).unwrap()));
    g.finish();
}

fn geometry(c: &mut Criterion) {
    c.bench_function("pentads", |b| b.iter(enumerate_pentads));
    let theta = ozeki_theta();
    let mut g = c.benchmark_group("models");
    g.sample_size(10);
    g.bench_function("rank-two locus (s5)", |b| {
        let t = s5_theta().unwrap();
        b.iter(|| rank2_locus(black_box(&t), None).unwrap())
    });
    g.bench_function("segre cubic (ozeki)", |b| b.iter(|| segre_cubic(black_box(&theta), None).unwrap()));
    g.finish();
}

criterion_group!(benches, schubert, cohomology, counting, geometry);
criterion_main!(benches);
