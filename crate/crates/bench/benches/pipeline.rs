use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coxtop_bench::{fano, fano_times_a1, free_product, h3, plane3, thin_h3, triangle};
use coxtop_core::complexes::{classical_chamber, davis_chamber};
use coxtop_core::coxeter::{enumerate_ball, enumerate_group, spherical_poset};
use coxtop_core::decomposition::verify_decomposition;
use coxtop_core::hc::{duality_check, hc_standard_realization, vcd};
use coxtop_core::realization::{formula_cross_check, realization_cohomology, realize};
use coxtop_core::{GenSet, Thickness};

fn coxeter(c: &mut Criterion) {
    let m = h3();
    c.bench_function("enumerate_group/H3", |b| b.iter(|| enumerate_group(black_box(&m), m.all()).unwrap()));
    let f = free_product();
    let mut g = c.benchmark_group("enumerate_ball/free_product");
    for radius in [6usize, 9, 12] {
        g.bench_with_input(BenchmarkId::from_parameter(radius), &radius, |b, &r| {
            b.iter(|| enumerate_ball(black_box(&f), r).unwrap())
        });
    }
    g.finish();
    c.bench_function("spherical_poset/triangle", |b| b.iter(|| spherical_poset(black_box(&triangle()))));
}

fn decomposition(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_decomposition");
    g.sample_size(10);
    for (name, phi) in
        [("Fano", fano()), ("Fano x A1", fano_times_a1()), ("thin H3", thin_h3()), ("plane q=3", plane3())]
    {
        g.bench_function(name, |b| b.iter(|| verify_decomposition(black_box(&phi), GenSet::EMPTY).unwrap()));
    }
    g.finish();
}

fn realization(c: &mut Criterion) {
    let phi = fano();
    let delta = classical_chamber(phi.matrix());
    let k = davis_chamber(phi.matrix());
    c.bench_function("realize/Fano/Davis", |b| b.iter(|| realize(black_box(&phi), &k).unwrap()));
    let heawood = realize(&phi, &delta).unwrap();
    c.bench_function("cohomology/Heawood", |b| b.iter(|| realization_cohomology(black_box(&heawood))));
    let mut g = c.benchmark_group("formula_cross_check");
    g.sample_size(10);
    g.bench_function("Fano/Davis", |b| b.iter(|| formula_cross_check(black_box(&phi), &k).unwrap()));
    g.finish();
}

fn compact_support(c: &mut Criterion) {
    let t = triangle();
    let f = free_product();
    c.bench_function("hc/triangle/thin", |b| {
        b.iter(|| hc_standard_realization(black_box(&t), &Thickness::Thin).unwrap())
    });
    c.bench_function("vcd/free_product", |b| b.iter(|| vcd(black_box(&f))));
    c.bench_function("duality/triangle", |b| b.iter(|| duality_check(black_box(&t))));
}

criterion_group!(benches, coxeter, decomposition, realization, compact_support);
criterion_main!(benches);
