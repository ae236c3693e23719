use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use spliceknot::apoly::a_polynomial;
use spliceknot::polyring::{gcd, resultant};
use spliceknot::splice::SpliceSystem;
use spliceknot::{rt_set, solve_roots, MultiPoly, Tolerances, TwistKnotModel};

fn xy(src: &str) -> MultiPoly {
    MultiPoly::parse(src, &["x", "y"]).unwrap()
}

fn exact(c: &mut Criterion) {
    let h = xy("x^3*y - 2*x*y^2 + 7*y - 1");
    let f = &xy("x^4 + 3*x*y + y^3 - 5") * &h;
    let g = &xy("2*x^2*y^2 - x + 4*y + 9") * &h;
    c.bench_function("gcd with cubic common factor", |b| {
        b.iter(|| gcd(black_box(&f), black_box(&g)).unwrap())
    });
    let p = xy("x^5 - 3*x^3*y + y^4*x - 2");
    let q = xy("x^4*y - x^2 + 5*y^3 + 1");
    c.bench_function("resultant in x, degrees 5 and 4", |b| {
        b.iter(|| resultant(black_box(&p), black_box(&q), "x").unwrap())
    });
    c.bench_function("A-polynomial of J(2,4)", |b| {
        b.iter(|| a_polynomial(&TwistKnotModel::new(black_box(2)).unwrap()).unwrap())
    });
}

fn numeric(c: &mut Criterion) {
    let eq = SpliceSystem::new(1, 1).unwrap().xi_equation;
    c.bench_function("certified roots, degree 36", |b| {
        b.iter(|| solve_roots(black_box(&eq)).unwrap())
    });
    let tol = Tolerances::default();
    let mut g = c.benchmark_group("rt");
    g.sample_size(10);
    g.bench_function("trefoil splice", |b| b.iter(|| rt_set(1, 1, &tol, 1).unwrap()));
    g.bench_function("figure-eight splice", |b| b.iter(|| rt_set(-1, -1, &tol, 1).unwrap()));
    g.finish();
}

criterion_group!(benches, exact, numeric);
criterion_main!(benches);
