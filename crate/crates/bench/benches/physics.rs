use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tether_core::{coverage, exposure, rf, Gain, TransmitterConfig};

fn reference_tx() -> TransmitterConfig {
    TransmitterConfig {
        power_w: 20.0,
        gain: Gain::Linear(50.0),
        freq_mhz: 900.0,
        antenna_dim_m: 1.0,
    }
}

fn point_formulas(c: &mut Criterion) {
    c.bench_function("hata_path_loss", |b| {
        b.iter(|| rf::hata_path_loss(black_box(900.0), black_box(200.0), 1.5, black_box(10.0)))
    });
    c.bench_function("cell_radius_from_budget", |b| {
        b.iter(|| {
            coverage::cell_radius_from_budget(900.0, black_box(200.0), 1.5, black_box(144.846))
        })
    });
    c.bench_function("received_power", |b| {
        b.iter(|| rf::received_power(black_box(20.0), 50.0, 1.0, 900.0, black_box(1000.0)))
    });
}

fn sweeps(c: &mut Criterion) {
    let tx = reference_tx();
    c.bench_function("ground_density_profile_101", |b| {
        b.iter(|| exposure::ground_density_profile(&tx, black_box(150.0), 25.0, 101))
    });
    c.bench_function("altitude_density_profile_1001", |b| {
        b.iter(|| exposure::altitude_density_profile(&tx, 200.0, black_box(400.0), 0.0, 1001))
    });
}

fn constellation(c: &mut Criterion) {
    let mut group = c.benchmark_group("constellation");
    group.sample_size(10);
    let layout = coverage::constellation_layout(19, 10.0).unwrap();
    group.bench_function("layout_19", |b| {
        b.iter(|| coverage::constellation_layout(black_box(19), 10.0))
    });
    group.bench_function("union_area_19", |b| {
        b.iter(|| layout.union_area_default_km2())
    });
    group.finish();
}

criterion_group!(benches, point_formulas, sweeps, constellation);
criterion_main!(benches);
