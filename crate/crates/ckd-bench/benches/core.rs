use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ckd_bench::fixture;
use ckd_core::algebra::{rep, Generator};
use ckd_core::group::{exp_series, one_param};
use ckd_core::laws::{evaluate_triangle, jacobian_rank, LawInput, LAW_TOL};
use ckd_core::triangle::solve_sas;
use ckd_core::SpaceLabels;

const GEOMETRIES: [SpaceLabels; 3] = [
    SpaceLabels::of(1.0, 1.0, 1.0),
    SpaceLabels::of(0.0, -1.0, 1.0),
    SpaceLabels::of(-1.0, -1.0, -1.0),
];

fn exponentials(c: &mut Criterion) {
    let mut g = c.benchmark_group("exponential");
    let l = SpaceLabels::of(1.0, 1.0, 1.0);
    g.bench_function("one_param", |b| {
        b.iter(|| one_param(black_box(Generator::Q1), black_box(0.7), l))
    });
    let x = rep(Generator::Q1, l).scale(0.7);
    g.bench_function("exp_series", |b| b.iter(|| exp_series(black_box(&x))));
    g.finish();
}

fn solving(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_sas");
    for l in GEOMETRIES {
        g.bench_with_input(BenchmarkId::from_parameter(l), &l, |b, &l| {
            b.iter(|| solve_sas(black_box(0.3), 0.7, 0.4, 0.3, l, 1e-9))
        });
    }
    g.finish();
}

fn laws(c: &mut Criterion) {
    let mut g = c.benchmark_group("laws");
    for l in GEOMETRIES {
        let t = fixture(l, 1)[0];
        g.bench_with_input(BenchmarkId::new("evaluate_triangle", l), &t, |b, t| {
            b.iter(|| evaluate_triangle(black_box(t), LAW_TOL))
        });
        let q = LawInput::from_triangle(&t).tuple();
        g.bench_with_input(BenchmarkId::new("jacobian_rank", l), &q, |b, q| {
            b.iter(|| jacobian_rank(&l, black_box(q), 1e-6))
        });
    }
    g.finish();
}

criterion_group!(benches, exponentials, solving, laws);
criterion_main!(benches);
