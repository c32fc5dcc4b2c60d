use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use leafdbar::approximation::{truncate_holomorphic, t_window, SectionGrid, TruncationSettings};
use leafdbar::geometry::omega0;
use leafdbar::quadrature::h_partial;
use leafdbar::solver::obstruction;
use leafdbar::{Complex64, LeafwiseFn};
use leafdbar_bench::fixture;

fn cauchy_transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("h_partial");
    let w = omega0();
    for n in [64usize, 128, 256] {
        let (family, spec) = fixture(n);
        group.bench_with_input(BenchmarkId::new("omega0_j1", n), &n, |b, _| {
            b.iter(|| h_partial(&w, 1, black_box(Complex64::new(0.3, 0.2)), 0.5, &family, &spec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("omega0_j0", n), &n, |b, _| {
            b.iter(|| h_partial(&w, 0, black_box(Complex64::new(0.3, 0.2)), 0.5, &family, &spec).unwrap())
        });
    }
    group.finish();
}

fn obstruction_functional(c: &mut Criterion) {
    let (family, spec) = fixture(256);
    let w = omega0();
    c.bench_function("obstruction_omega0", |b| b.iter(|| obstruction(black_box(&w), &family, &spec).unwrap()));
}

fn truncation(c: &mut Criterion) {
    let h: Arc<dyn LeafwiseFn> = Arc::new(|z: Complex64, t: f64| (Complex64::new(1.3, t) - z).inv());
    let grid = SectionGrid::new(1.0, 8, 64, t_window(1.0, 17));
    let settings = TruncationSettings::default();
    c.bench_function("truncate_pole_1e-8", |b| {
        b.iter(|| truncate_holomorphic(h.clone(), 1, 1.15, &grid, 1e-8, &settings).unwrap())
    });
}

criterion_group!(benches, cauchy_transform, obstruction_functional, truncation);
criterion_main!(benches);
