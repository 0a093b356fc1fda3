use criterion::{black_box, criterion_group, criterion_main, Criterion};

use g2kit::composition;
use g2kit::exactlinalg::random_invertible_gaussian;
use g2kit::jordan::JordanAlgebra;
use g2kit::liealg::{derivations, jacobi_check, JacobiMode, SCAlgebra};
use g2kit::magicsquare::{vinberg_build_named, VerifyPolicy};
use g2kit::threeform::{classify, schouten_form};

fn jacobi(c: &mut Criterion) {
    let f4 = vinberg_build_named("R", "O", VerifyPolicy::None).unwrap().sc;
    let e6 = vinberg_build_named("C", "O", VerifyPolicy::None).unwrap().sc;
    let mut g = c.benchmark_group("jacobi");
    g.sample_size(10);
    g.bench_function("full f4", |b| b.iter(|| assert!(jacobi_check(black_box(&f4), JacobiMode::Full).passed)));
    g.bench_function("full e6", |b| b.iter(|| assert!(jacobi_check(black_box(&e6), JacobiMode::Full).passed)));
    g.finish();
}

fn kernels(c: &mut Criterion) {
    let o = SCAlgebra::from_comp(&composition::canonical_octonions());
    let j = JordanAlgebra::new(8).unwrap().product_table();
    let mut g = c.benchmark_group("sparse kernel");
    g.sample_size(10);
    g.bench_function("Der(O)", |b| b.iter(|| assert_eq!(derivations(black_box(&o)).dim(), 14)));
    g.bench_function("Der(H3(O))", |b| b.iter(|| assert_eq!(derivations(black_box(&j)).dim(), 52)));
    g.finish();
}

fn forms(c: &mut Criterion) {
    let w = schouten_form(5).pullback(&random_invertible_gaussian(7, 1, 1)).unwrap();
    c.bench_function("classify pulled-back W5", |b| b.iter(|| classify(black_box(&w)).unwrap()));
    c.bench_function("build g(O,O)", |b| b.iter(|| vinberg_build_named("O", "O", VerifyPolicy::None).unwrap()));
}

criterion_group!(benches, jacobi, kernels, forms);
criterion_main!(benches);
