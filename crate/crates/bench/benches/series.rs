use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use vertpairs_core::gw::{gw_vertical_substituted, gw_vertical_trig, k_matrix};
use vertpairs_core::identities::{appendix_lhs, pix_identity_check};
use vertpairs_core::pairs::{
    vertical_bruteforce, vertical_closed_descendents, ChiParity, Insertion, SurfaceGeometry,
};
use vertpairs_core::{int, trig_series, TrigKind};

fn geom(h: i64) -> SurfaceGeometry {
    SurfaceGeometry {
        h,
        parity: ChiParity::Odd,
    }
}

fn series_arithmetic(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for order in [16i64, 32, 64] {
        let sin = trig_series(TrigKind::Sin, &int(1), order + 1).shift(-1);
        g.bench_with_input(BenchmarkId::new("sinc_inverse", order), &order, |b, &n| {
            b.iter(|| sin.inverse(black_box(n)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("sinc_pow_8", order), &order, |b, &n| {
            b.iter(|| sin.pow_capped(black_box(8), Some(n)))
        });
    }
    g.finish();
}

fn stable_pairs(c: &mut Criterion) {
    let mut g = c.benchmark_group("pairs");
    let ins = [Insertion::new(1, int(1)), Insertion::new(1, int(1))];
    for d in 1..=4 {
        g.bench_with_input(BenchmarkId::new("closed", d), &d, |b, &d| {
            b.iter(|| vertical_closed_descendents(&geom(4), d, &ins).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("bruteforce_window_20", d), &d, |b, &d| {
            b.iter(|| vertical_bruteforce(&geom(4), d, &ins, -10, 10).unwrap())
        });
    }
    g.finish();
}

fn gromov_witten(c: &mut Criterion) {
    let mut g = c.benchmark_group("gw");
    for d in [1i64, 3, 5] {
        g.bench_with_input(BenchmarkId::new("substituted_u30", d), &d, |b, &d| {
            b.iter(|| gw_vertical_substituted(&geom(4), d, 31).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("trig_u30", d), &d, |b, &d| {
            b.iter(|| gw_vertical_trig(&geom(4), d, 31).unwrap())
        });
    }
    g.bench_function("k_matrix_12", |b| {
        b.iter(|| k_matrix(black_box(12)).unwrap())
    });
    g.finish();
}

fn identities(c: &mut Criterion) {
    let mut g = c.benchmark_group("identities");
    g.bench_function("appendix_alpha_12", |b| {
        b.iter(|| appendix_lhs(black_box(12), 26).unwrap())
    });
    g.bench_function("bivariate_x20_v8", |b| {
        b.iter(|| pix_identity_check(12, 21, 9).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    series_arithmetic,
    stable_pairs,
    gromov_witten,
    identities
);
criterion_main!(benches);
