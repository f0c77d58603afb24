//! Parallel versus sequential enumeration on a few mid-sized instances.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use galcoh::cohomology::{enumerate_h1, DEFAULT_H1_BOUND};
use galcoh::groups::{all_homs, FiniteGroup, GroupAction, Perm, DEFAULT_HOM_BOUND};
use galcoh::par;
use galcoh::tensorforms::{FrobeniusAction, GaloisFieldTower, MatrixGroupK, DEFAULT_MATRIX_BOUND};

fn compare(c: &mut Criterion, name: &str, f: impl Fn() + Copy) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(f));
    group.bench_function("sequential", |b| b.iter(|| par::sequential(f)));
    group.finish();
}

fn benches(c: &mut Criterion) {
    let s4 = FiniteGroup::symmetric(4).unwrap();
    let c4 = FiniteGroup::cyclic(4);
    let conj = Perm::parse_cycles(4, "(0 1 2 3)").unwrap();
    let action = GroupAction::by_conjugation(c4, s4, &[conj]).unwrap();
    compare(c, "h1_c4_on_s4", || {
        black_box(enumerate_h1(&action, DEFAULT_H1_BOUND).unwrap());
    });

    let tower = Arc::new(GaloisFieldTower::new(2, 1, 4).unwrap());
    let gl = MatrixGroupK::general(tower, 2, DEFAULT_MATRIX_BOUND).unwrap();
    let frob = FrobeniusAction::new(&gl).unwrap();
    compare(c, "h1_gl2_f16", || {
        black_box(enumerate_h1(&frob, DEFAULT_MATRIX_BOUND as u128).unwrap());
    });

    let q8 = FiniteGroup::from_cycle_strings(8, &["(0 2 1 3)(4 6 5 7)", "(0 4 1 5)(2 7 3 6)"]).unwrap();
    let s5 = FiniteGroup::symmetric(5).unwrap();
    compare(c, "homs_q8_to_s5", || {
        black_box(all_homs(&q8, &s5, DEFAULT_HOM_BOUND).unwrap());
    });
}

criterion_group!(enumeration, benches);
criterion_main!(enumeration);
