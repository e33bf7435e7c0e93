use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use aperylift_bench::solutions;
use aperylift_core::algebraicity::{bounded_height_scan, degree_test, CandidateCoefficients};
use aperylift_core::apery::{apery_b, Variant};
use aperylift_core::lift::{lift_m3, GeneralLift, LiftedBasis};
use aperylift_core::pairs::{NamedPair, PairName};
use aperylift_core::rational::int;

fn propagation(c: &mut Criterion) {
    let mut g = c.benchmark_group("propagate");
    for n in [100, 300] {
        g.bench_with_input(BenchmarkId::new("apery3", n), &n, |b, &n| b.iter(|| solutions(PairName::Apery3, n)));
    }
    g.finish();
    c.bench_function("closed_form_b/zeta3/100", |b| b.iter(|| apery_b(black_box(100), Variant::Zeta3)));
}

fn lifting(c: &mut Criterion) {
    let base = NamedPair::get(PairName::Apery3).recurrence;
    c.bench_function("lift_m3/apery3/check_100", |b| {
        let (a, s) = solutions(PairName::Apery3, 110);
        let lifted = lift_m3(&base, 100).unwrap();
        b.iter(|| {
            let basis = LiftedBasis::new(&a, &s, 3).unwrap();
            assert_eq!(basis.first_violation(&lifted.relation).unwrap(), None);
        })
    });
    c.bench_function("general_lift/m4/pell/30", |b| {
        let pell = NamedPair::get(PairName::Pell).recurrence;
        b.iter(|| GeneralLift::new(&pell, 4, 30).unwrap().tabulate(1, 30).unwrap())
    });
}

fn algebraicity(c: &mut Criterion) {
    let (a, s) = solutions(PairName::Pell, 62);
    let cand = CandidateCoefficients::from_abc(int(-2), int(1), int(0)).unwrap();
    c.bench_function("degree_test/pell/60", |b| b.iter(|| degree_test(&a, &s, &cand, 60).unwrap()));
    let (a, s) = solutions(PairName::Apery3, 42);
    let mut g = c.benchmark_group("height_scan");
    g.sample_size(10);
    g.bench_function("apery3/h4/40", |b| b.iter(|| bounded_height_scan(&a, &s, 2, 4, 40).unwrap()));
    g.finish();
}

criterion_group!(benches, propagation, lifting, algebraicity);
criterion_main!(benches);
