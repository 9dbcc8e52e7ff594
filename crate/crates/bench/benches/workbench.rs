use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pointsplit_core::anomaly::{compute_i1_eps, compute_i2_direct, compute_i2_spectral, kernel_asymptote};
use pointsplit_core::modeops::{build_h0_eps, build_rho, commutator};
use pointsplit_core::vacuum::ground_state_bruteforce;
use pointsplit_core::verify::car_suite;
use pointsplit_core::{LatticeConfig, TrigPoly};

fn operator_algebra(c: &mut Criterion) {
    let cfg = LatticeConfig::new(1.0, 1.0, 3).unwrap();
    c.bench_function("commutator_h0eps_rho_n3", |b| {
        let h = build_h0_eps(&cfg, 0.3);
        b.iter(|| commutator(black_box(&h), &build_rho(0.7, &cfg)).unwrap())
    });
    c.bench_function("car_suite_n2", |b| b.iter(|| car_suite(black_box(2))));
}

fn anomaly(c: &mut Criterion) {
    let cfg = LatticeConfig::new(1.0, 1.0, 2).unwrap();
    let f = TrigPoly::cosine(cfg.box_length(), 1, 1.0).unwrap();
    c.bench_function("i2_direct_n2", |b| b.iter(|| compute_i2_direct(black_box(&f), &cfg).unwrap()));
    c.bench_function("i2_spectral_n2", |b| b.iter(|| compute_i2_spectral(black_box(&f), &cfg).unwrap()));

    let big = LatticeConfig::new(1.0, 1.0, 60).unwrap();
    let fb = TrigPoly::cosine(big.box_length(), 1, 1.0).unwrap();
    c.bench_function("i1_eps_n60", |b| b.iter(|| compute_i1_eps(black_box(&fb), 0.1, &big)));

    let mut group = c.benchmark_group("kernel_asymptote");
    group.sample_size(10);
    group.bench_function("eps_0.01", |b| b.iter(|| kernel_asymptote(black_box(0.01), 1e-4, 1e4, 1.0).unwrap()));
    group.finish();
}

fn vacuum(c: &mut Criterion) {
    let cfg = LatticeConfig::new(1.0, 1.0, 3).unwrap();
    let mut group = c.benchmark_group("bruteforce");
    group.sample_size(10);
    group.bench_function("n3_eps2", |b| b.iter(|| ground_state_bruteforce(black_box(2.0), &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, operator_algebra, anomaly, vacuum);
criterion_main!(benches);
