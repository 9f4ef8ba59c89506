use criterion::{black_box, criterion_group, criterion_main, Criterion};

use heptalift::census::census_f2;
use heptalift::genfun::hp_verify;
use heptalift::lift::{lift_table, EigenData};
use heptalift::lvalue::sym2_lvalue;
use heptalift::padic::elementary_divisors;
use heptalift::siegel::f_poly;
use heptalift_bench::{elements, nonsingular_elements};

fn algebra(c: &mut Criterion) {
    let xs = elements(64, 50, 1);
    c.bench_function("octonion_mul", |b| b.iter(|| xs.windows(2).map(|w| w[0].x.mul(&w[1].y)).collect::<Vec<_>>()));
    c.bench_function("jordan_det", |b| b.iter(|| xs.iter().map(|t| t.det()).collect::<Vec<_>>()));
    c.bench_function("jordan_adjoint", |b| b.iter(|| xs.iter().map(|t| t.adjoint()).collect::<Vec<_>>()));
}

fn arithmetic(c: &mut Criterion) {
    let ts = nonsingular_elements(16, 3, 2);
    c.bench_function("elementary_divisors_p2", |b| {
        b.iter(|| ts.iter().map(|t| elementary_divisors(t, 2, None).unwrap()).collect::<Vec<_>>())
    });
    c.bench_function("siegel_f_poly_p3_1_2_4", |b| b.iter(|| f_poly(black_box(3), [1, 2, 4]).unwrap()));
    c.bench_function("hp_verify_p3_t8", |b| b.iter(|| hp_verify(black_box(3), 8, false).unwrap()));
    let e = EigenData::builtin(10, 64).unwrap();
    c.bench_function("lift_table_det_64", |b| b.iter(|| lift_table(&e, black_box(64)).unwrap()));
}

fn heavy(c: &mut Criterion) {
    let mut g = c.benchmark_group("heavy");
    g.sample_size(10);
    let e = EigenData::builtin(10, 4000).unwrap();
    g.bench_function("sym2_lvalue_s1_20_digits", |b| b.iter(|| sym2_lvalue(&e, black_box(1), 20).unwrap()));
    g.bench_function("census_f2", |b| b.iter(|| census_f2(black_box(heptalift::util::default_threads()))));
    g.finish();
}

criterion_group!(benches, algebra, arithmetic, heavy);
criterion_main!(benches);
