use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use fibdense_bench::{cone_example, mordell_curve, worked};
use fibdense_core::density::{densify, DensityParams};
use fibdense_core::elliptic::torsion_certify;
use fibdense_core::enriques::{bitangent_sections, singular_points};
use fibdense_core::exactmath::{resultant, Poly};
use fibdense_core::fibration::{order_probe, ramification_points};
use fibdense_core::{enumerate_rationals, Rat};

fn group_law(c: &mut Criterion) {
    let (e, p) = mordell_curve();
    let q = e.mul(3, &p);
    c.bench_function("ec_add", |b| b.iter(|| e.add(black_box(&p), black_box(&q))));
    c.bench_function("ec_mul_12", |b| b.iter(|| e.mul(12, black_box(&p))));
    c.bench_function("torsion_certify_12", |b| b.iter(|| torsion_certify(&e, black_box(&p), 12).unwrap()));
}

fn polynomials(c: &mut Criterion) {
    let f = Poly::from_ints(&[3, -1, 4, 1, -5, 9, 2, -6]);
    let g = Poly::from_ints(&[5, 3, -5, 8, 9, -7, 9]);
    c.bench_function("resultant_deg7_deg6", |b| b.iter(|| resultant(black_box(&f), black_box(&g)).unwrap()));
}

fn fibrations(c: &mut Criterion) {
    let (f, m) = worked();
    let samples = enumerate_rationals(10);
    c.bench_function("order_probe_h10", |b| b.iter(|| order_probe(&f, &m, &samples, 18).unwrap()));
    c.bench_function("ramification_constant_x", |b| b.iter(|| ramification_points(&f, &m).unwrap()));
    let params = DensityParams {
        height_bound: 5,
        k_max: 3,
        torsion_bound: 12,
    };
    let mut g = c.benchmark_group("density");
    g.sample_size(10);
    g.bench_function("densify_h5_k3", |b| b.iter(|| densify(&f, &m, &params).unwrap()));
    g.finish();
}

fn enriques(c: &mut Criterion) {
    let fd = cone_example();
    let one = Rat::from_int(1);
    let mut g = c.benchmark_group("enriques");
    g.sample_size(10);
    g.bench_function("singular_points", |b| b.iter(|| singular_points(&fd).unwrap()));
    g.bench_function("bitangent_sections", |b| b.iter(|| bitangent_sections(&fd, &one, &one, None).unwrap()));
    g.finish();
}

criterion_group!(benches, group_law, polynomials, fibrations, enriques);
criterion_main!(benches);
