use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use entrolen::entropy::{estimate, estimate_quotient};
use entrolen::rational::ratio;
use entrolen::shift::StabilizationConfig;
use entrolen::tiling::greedy_quasi_tile;
use entrolen::{
    CocycleData, CrossedElement, FolnerScheme, GroupKind, GroupSpec, SubshiftPresentation,
};

fn ring(kind: GroupKind, field: &str) -> CocycleData {
    CocycleData::trivial(GroupSpec::new(kind), field.parse().unwrap())
}

fn cyclic(c: &CocycleData, x: &str) -> SubshiftPresentation {
    let x = CrossedElement::parse(x, c.field(), c.group().kind()).unwrap();
    SubshiftPresentation::cyclic(c.clone(), &x).unwrap()
}

fn trajectories(cr: &mut Criterion) {
    let z = ring(GroupKind::FreeAbelian(1), "gf2");
    let bern = SubshiftPresentation::bernoulli(z.clone(), 3).unwrap();
    let zs = FolnerScheme::standard(z.group().clone());
    cr.bench_function("bernoulli_rank3_z_n30", |b| {
        b.iter(|| estimate(black_box(&bern), &zs, 30).unwrap())
    });

    let zz2 = ring(GroupKind::ZCrossZ2, "gf3");
    let ideal = cyclic(&zz2, "1*(0,0) + 1*(0,1)");
    let s = FolnerScheme::standard(zz2.group().clone());
    cr.bench_function("zero_divisor_ideal_zxz2_n30", |b| {
        b.iter(|| estimate(black_box(&ideal), &s, 30).unwrap())
    });

    let h = ring(GroupKind::Heisenberg, "gf2");
    let hp = cyclic(&h, "1*(0,0,0) + 1*(1,0,0) + 1*(0,1,0)");
    let hs = FolnerScheme::standard(h.group().clone());
    cr.bench_function("heisenberg_ball_n4", |b| {
        b.iter(|| estimate(black_box(&hp), &hs, 4).unwrap())
    });
}

fn quotients(cr: &mut Criterion) {
    let z2 = ring(GroupKind::FreeAbelian(2), "gf3");
    let m = SubshiftPresentation::bernoulli(z2.clone(), 1).unwrap();
    let n = cyclic(&z2, "2*(0,0) + 1*(1,0)");
    let s = FolnerScheme::standard(z2.group().clone());
    let approx = StabilizationConfig::default();
    let mut g = cr.benchmark_group("quotient");
    g.sample_size(10);
    g.bench_function("z2_augmentation_n10", |b| {
        b.iter(|| estimate_quotient(black_box(&m), &n, &s, 10, &approx).unwrap())
    });
    g.finish();
}

fn tilings(cr: &mut Criterion) {
    let z2 = FolnerScheme::standard(GroupSpec::new(GroupKind::FreeAbelian(2)));
    let a = z2.set(30);
    let tiles = [z2.set(2)];
    let eps = ratio(1, 10);
    cr.bench_function("greedy_tile_z2_f30_by_f2", |b| {
        b.iter(|| greedy_quasi_tile(black_box(&a), &tiles, &eps).unwrap())
    });
}

criterion_group!(benches, trajectories, quotients, tilings);
criterion_main!(benches);
