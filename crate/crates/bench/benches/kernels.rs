use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use virial_core::graphs::{verify_partition, EdgeOrder};
use virial_core::stability::estimate_bn;
use virial_core::{
    g_function, integral_c, integral_ctilde, penrose_tree_sum, ursell_direct, Configuration,
    PairPotential,
};

fn cluster(n: usize) -> Configuration {
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let t = i as f64;
            vec![1.05 * t.cos() + 0.1 * t, 1.05 * t.sin(), 0.3 * (t * 0.7).sin()]
        })
        .collect();
    Configuration::new(3, &pts).unwrap()
}

fn cluster_sums(c: &mut Criterion) {
    let p = PairPotential::lennard_jones();
    let mut group = c.benchmark_group("cluster_sum");
    for n in [4, 5, 6] {
        let conf = cluster(n);
        group.bench_with_input(BenchmarkId::new("ursell_direct", n), &conf, |b, conf| {
            b.iter(|| ursell_direct(&p, black_box(1.0), conf).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("penrose_tree", n), &conf, |b, conf| {
            b.iter(|| penrose_tree_sum(&p, black_box(1.0), conf).unwrap())
        });
    }
    group.finish();
}

fn quadrature(c: &mut Criterion) {
    let p = PairPotential::lennard_jones();
    let mut group = c.benchmark_group("quadrature");
    for beta in [1.0, 10.0] {
        group.bench_with_input(BenchmarkId::new("C", beta), &beta, |b, &beta| {
            b.iter(|| integral_c(&p, black_box(beta)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("Ctilde", beta), &beta, |b, &beta| {
            b.iter(|| integral_ctilde(&p, black_box(beta)).unwrap())
        });
    }
    group.finish();
}

fn partition(c: &mut Criterion) {
    let ord = EdgeOrder::lexicographic(5);
    c.bench_function("verify_partition/5", |b| b.iter(|| verify_partition(5, black_box(&ord)).unwrap()));
}

fn special_functions(c: &mut Criterion) {
    c.bench_function("g_function", |b| {
        b.iter(|| {
            [1e-3, 1.0, 1e4, 1e8]
                .iter()
                .map(|&u| g_function(black_box(u)).unwrap())
                .sum::<f64>()
        })
    });
}

fn stability(c: &mut Criterion) {
    let p = PairPotential::lennard_jones();
    let mut group = c.benchmark_group("stability");
    group.sample_size(10);
    group.bench_function("estimate_b4", |b| b.iter(|| estimate_bn(&p, 4, 3, 4, black_box(1)).unwrap()));
    group.finish();
}

criterion_group!(benches, cluster_sums, quadrature, partition, special_functions, stability);
criterion_main!(benches);
