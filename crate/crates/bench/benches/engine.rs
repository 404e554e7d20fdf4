//! Benchmarks for the hot paths: exact fraction arithmetic, one-box
//! coefficient batches, raising-operator matrices, a full relation family,
//! and the triangular Macdonald solve.

use bqt_bench::{dense_fraction, staircase_vector};
use bqt_core::fixed_point::{pieri, pieri_lambda_star};
use bqt_core::poly_rep::classical_macdonald;
use bqt_core::relations;
use bqt_core::{BasisTag, Engine, Gen, KVector, Partition};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bench_fractions(c: &mut Criterion) {
    let a = dense_fraction(6);
    let b = dense_fraction(5);
    c.bench_function("fraction multiply and reduce", |bch| {
        bch.iter(|| black_box(black_box(a.clone()) * black_box(b.clone())))
    });
    c.bench_function("fraction add and reduce", |bch| {
        bch.iter(|| black_box(black_box(a.clone()) + black_box(b.clone())))
    });
}

fn bench_pieri(c: &mut Criterion) {
    let shapes: Vec<Partition> = (0..=6u32).flat_map(Partition::enumerate).collect();
    c.bench_function("one-box coefficients, product route, |mu| <= 6", |bch| {
        bch.iter(|| {
            for mu in &shapes {
                for x in mu.addable_cells() {
                    let lam = mu.add_cell(x).unwrap();
                    black_box(pieri(&lam, mu));
                }
            }
        })
    });
    c.bench_function("one-box coefficients, series route, |mu| <= 6", |bch| {
        bch.iter(|| {
            for mu in &shapes {
                for x in mu.addable_cells() {
                    let lam = mu.add_cell(x).unwrap();
                    black_box(pieri_lambda_star(&lam, mu));
                }
            }
        })
    });
}

fn bench_operators(c: &mut Criterion) {
    let eng = Engine::new();
    c.bench_function("raising operator on the full (5,2) basis", |bch| {
        bch.iter(|| {
            for p in bqt_core::FlagPoint::enumerate(5, 2) {
                let v = KVector::unit(p, BasisTag::H);
                black_box(eng.apply_gen(Gen::DPlus, &v).unwrap());
            }
        })
    });
    let v = staircase_vector(6);
    c.bench_function("one-box lattice step on a 6-box column", |bch| {
        bch.iter(|| {
            let up = eng.apply_gen(Gen::DPlus, black_box(&v)).unwrap();
            black_box(eng.apply_gen(Gen::DMinus, &up).unwrap())
        })
    });
}

fn bench_relations(c: &mut Criterion) {
    let eng = Engine::new();
    let catalog = relations::catalog();
    let family = catalog
        .iter()
        .find(|f| f.name == "commutator-y")
        .expect("family exists");
    let mut group = c.benchmark_group("relations");
    group.sample_size(10);
    group.bench_function("commutator family on grade (4,2)", |bch| {
        bch.iter(|| black_box(family.check(&eng, 4, 2)))
    });
    group.finish();
}

fn bench_macdonald(c: &mut Criterion) {
    let shapes = Partition::enumerate(5);
    let mut group = c.benchmark_group("macdonald");
    group.sample_size(10);
    group.bench_function("triangular solve, all shapes of 5", |bch| {
        bch.iter(|| {
            for mu in &shapes {
                black_box(classical_macdonald(mu, 5).unwrap());
            }
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_fractions,
    bench_pieri,
    bench_operators,
    bench_relations,
    bench_macdonald
);
criterion_main!(benches);
