use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use bcm_core::bridge::{expand_free_energy, BridgeConfig};
use bcm_core::eo::EoForms;
use bcm_core::laplace::FreeEnergies;
use bcm_core::rational::rat;

fn bench_free_energy(c: &mut Criterion) {
    c.bench_function("compute_F_1_2_cold", |b| {
        b.iter(|| {
            let mut fe = FreeEnergies::new();
            black_box(fe.get_or_compute(1, 2).unwrap())
        })
    });
    let mut group = c.benchmark_group("level3");
    group.sample_size(10);
    group.bench_function("compute_F_0_5_cold", |b| {
        b.iter(|| {
            let mut fe = FreeEnergies::new();
            black_box(fe.get_or_compute(0, 5).unwrap())
        })
    });
    group.finish();
}

fn bench_residue_recursion(c: &mut Criterion) {
    c.bench_function("tr_step_1_1", |b| {
        b.iter(|| {
            let mut eo = EoForms::new();
            black_box(eo.tr(1, 1).unwrap())
        })
    });
    let mut group = c.benchmark_group("level2");
    group.sample_size(10);
    group.bench_function("tr_step_0_4_cold", |b| {
        b.iter(|| {
            let mut eo = EoForms::new();
            black_box(eo.tr(0, 4).unwrap())
        })
    });
    group.finish();
}

fn bench_bridge_expansion(c: &mut Criterion) {
    let mut fe = FreeEnergies::new();
    let f = fe.get_or_compute(0, 4).unwrap();
    let cfg = BridgeConfig::new(rat(1, 1), rat(1, 1), 12).unwrap();
    c.bench_function("expand_F_0_4_order12", |b| {
        b.iter(|| black_box(expand_free_energy(&f, &cfg).unwrap()))
    });
}

criterion_group!(benches, bench_free_energy, bench_residue_recursion, bench_bridge_expansion);
criterion_main!(benches);
