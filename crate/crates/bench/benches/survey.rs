use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cuspforge_core::criteria::survey_x1;
use cuspforge_core::etaq::{quotient_series, x1_20_f, certify_x1_20};
use cuspforge_core::genus::g1;
use cuspforge_core::symmetry::cusp_orbits_x1;
use cuspforge_core::Level;

fn survey(c: &mut Criterion) {
    c.bench_function("survey_x1 max 100", |b| b.iter(|| survey_x1(black_box(100)).unwrap()));
}

fn genus(c: &mut Criterion) {
    c.bench_function("g1 for N <= 300", |b| {
        b.iter(|| (1..=300u64).map(|n| g1(Level::new(n).unwrap())).sum::<u64>())
    });
}

fn orbits(c: &mut Criterion) {
    let level = Level::new(60).unwrap();
    c.bench_function("cusp orbits X_1(60)", |b| b.iter(|| cusp_orbits_x1(black_box(level))));
}

fn eta(c: &mut Criterion) {
    let f = x1_20_f();
    c.bench_function("series of f, 200 terms", |b| b.iter(|| quotient_series(&f, black_box(200)).unwrap()));
    c.bench_function("X_1(20) certificate", |b| b.iter(|| certify_x1_20().unwrap()));
}

criterion_group!(benches, survey, genus, orbits, eta);
criterion_main!(benches);
