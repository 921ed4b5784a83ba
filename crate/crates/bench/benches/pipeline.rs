use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fibertorsion::fixtures::*;
use fibertorsion::*;

fn build(c: &mut Criterion) {
    let phi = m036();
    c.bench_function("build_layered m036", |b| {
        b.iter(|| build_layered(black_box(&phi)).unwrap())
    });
}

fn propagation(c: &mut Criterion) {
    let l = m036_layered();
    let obs = m036_signed_obstruction(&l);
    let sol = m036_signed_solution();
    c.bench_function("propagate_c m036 signed", |b| {
        b.iter(|| propagate_c(black_box(&sol.c), &l, &obs).unwrap())
    });
}

fn torsion(c: &mut Criterion) {
    let l = m036_layered();
    let mut group = c.benchmark_group("m036 torsion");
    group.sample_size(10);
    for (name, sol, obs) in [
        (
            "trivial",
            m036_trivial_solution(),
            ObstructionData::trivial(&l),
        ),
        (
            "signed",
            m036_signed_solution(),
            m036_signed_obstruction(&l),
        ),
    ] {
        group.bench_function(format!("tau2 reduced {name}"), |b| {
            b.iter(|| torsion2_reduced(&sol.c, &l, &obs).unwrap())
        });
        group.bench_function(format!("tau3 reduced {name}"), |b| {
            b.iter(|| torsion3_reduced(&sol.c, &l, &obs).unwrap())
        });
        group.bench_function(format!("delta3 full {name}"), |b| {
            b.iter(|| oneloop3_full(&sol.c, &l, &obs).unwrap())
        });
    }
    group.finish();
}

fn determinant(c: &mut Criterion) {
    let k = m036_signed_solution().field;
    let a = NfElem::generator(&k);
    // A dense 6x6 matrix with entries of the form x + y a + z t.
    let m = Matrix::from_fn(6, 6, |i, j| {
        let x = NfElem::from_int(&k, ((i * 7 + j * 3) % 5) as i64 - 2);
        let y = &a * &NfElem::from_int(&k, ((i + 2 * j) % 3) as i64);
        let z = NfElem::from_int(&k, ((i * j) % 4) as i64 - 1);
        &LaurentPoly::constant(&x + &y) + &LaurentPoly::monomial(z, 1)
    });
    c.bench_function("det_laurent 6x6 cubic field", |b| {
        b.iter(|| det_laurent(black_box(&m)).unwrap())
    });
}

criterion_group!(benches, build, propagation, torsion, determinant);
criterion_main!(benches);
