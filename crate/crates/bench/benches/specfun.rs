use abwave::specfun::{bessel_jy, gamma, hankel1, hyp2f1, hyp2f1_continued, Branch};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn special(c: &mut Criterion) {
    let mut group = c.benchmark_group("specfun");
    group.bench_function("gamma", |b| b.iter(|| gamma(black_box(7.3)).unwrap()));
    group.bench_function("bessel_jy_steed_x5", |b| b.iter(|| bessel_jy(black_box(0.7), black_box(5.0)).unwrap()));
    group.bench_function("bessel_jy_series_x0.1", |b| b.iter(|| bessel_jy(black_box(0.7), black_box(0.1)).unwrap()));
    group.bench_function("hankel1_asymptotic_x500", |b| b.iter(|| hankel1(black_box(0.7), black_box(500.0)).unwrap()));
    group.bench_function("hyp2f1_z0.9", |b| b.iter(|| hyp2f1(black_box(0.85), 0.35, 2.2, black_box(0.9)).unwrap()));
    group.bench_function("hyp2f1_continued_z3", |b| {
        b.iter(|| hyp2f1_continued(black_box(0.85), 0.35, 2.2, black_box(3.0), Branch::Upper).unwrap())
    });
    group.finish();
}

criterion_group!(benches, special);
criterion_main!(benches);
