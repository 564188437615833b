use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use qm_core::algebra::{lip_seminorm, BetaSequence, Filtration, PointFunction};
use qm_core::instances::{CantorModel, IntervalModel, UhfModel};
use qm_core::mk::{mk_distance, pure_distance_matrix, pure_state_at};
use qm_core::numerics::{spectral_norm_complex, ComplexMatrix};

fn wave(len: usize) -> PointFunction {
    PointFunction::new((0..len).map(|i| (i as f64 * 0.37).sin()).collect())
}

fn hermitian(dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |i, j| {
        Complex64::new(((i * 7 + j * 3) as f64).sin(), ((i + 2 * j) as f64).cos())
    });
    g.combine(0.5, &g.adjoint(), 0.5)
}

fn lp(c: &mut Criterion) {
    let beta = BetaSequence::geometric(0.5).unwrap();
    let m = IntervalModel::new(10).unwrap();
    let (x, y) = (
        pure_state_at(m.algebra(), 0).unwrap(),
        pure_state_at(m.algebra(), 9).unwrap(),
    );
    c.bench_function("mk_distance interval N=10", |b| {
        b.iter(|| mk_distance(m.algebra(), &beta, black_box(&x), black_box(&y)).unwrap())
    });
    let cantor = CantorModel::new(4).unwrap();
    c.bench_function("pure_distance_matrix cantor D=4", |b| {
        b.iter(|| pure_distance_matrix(black_box(cantor.algebra()), &beta).unwrap())
    });
}

fn expectations(c: &mut Criterion) {
    let cantor = CantorModel::new(10).unwrap();
    let a = wave(cantor.algebra().len());
    c.bench_function("expectation cantor D=10", |b| {
        b.iter(|| cantor.algebra().expectation(black_box(6), &a).unwrap())
    });
    let uhf = UhfModel::new(5).unwrap();
    let x = hermitian(32);
    c.bench_function("expectation uhf K=5", |b| {
        b.iter(|| uhf.algebra().expectation(black_box(3), &x).unwrap())
    });
}

fn norms(c: &mut Criterion) {
    let x = hermitian(32);
    c.bench_function("spectral_norm 32x32", |b| {
        b.iter(|| spectral_norm_complex(black_box(&x)).unwrap())
    });
    let uhf = UhfModel::new(4).unwrap();
    let beta = BetaSequence::harmonic();
    let y = hermitian(16);
    c.bench_function("lip_seminorm uhf K=4", |b| {
        b.iter(|| lip_seminorm(uhf.algebra(), &beta, black_box(&y)).unwrap())
    });
}

criterion_group!(benches, lp, expectations, norms);
criterion_main!(benches);
