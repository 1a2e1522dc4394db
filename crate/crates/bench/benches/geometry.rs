use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use newton_bif_bench::{exp_points, exp_polynomial};
use newton_bif_core::{atypical_faces, LatticePolytope};

fn hull(c: &mut Criterion) {
    let pts = exp_points();
    c.bench_function("exp_convex_hull", |b| b.iter(|| LatticePolytope::convex_hull(black_box(&pts)).unwrap()));
}

fn fan(c: &mut Criterion) {
    let p = LatticePolytope::convex_hull(&exp_points()).unwrap();
    c.bench_function("exp_dual_fan", |b| b.iter(|| black_box(&p).dual_fan().unwrap()));
}

fn volume(c: &mut Criterion) {
    let p = LatticePolytope::convex_hull(&exp_points()).unwrap();
    c.bench_function("exp_normalized_volume", |b| b.iter(|| black_box(&p).normalized_volume().unwrap()));
}

fn faces(c: &mut Criterion) {
    let f = exp_polynomial();
    c.bench_function("exp_atypical_faces", |b| b.iter(|| atypical_faces(black_box(&f)).unwrap()));
}

criterion_group!(benches, hull, fan, volume, faces);
criterion_main!(benches);
