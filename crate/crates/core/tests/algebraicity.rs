use num_traits::{Signed, Zero};
use proptest::prelude::*;

use aperylift_core::algebraicity::{
    bounded_height_scan, candidate_from_samples, degree_test, format_polynomial, limit_estimate, primitive_vectors,
    recessive_trace, CandidateCoefficients, Verdict,
};
use aperylift_core::lift::LiftedBasis;
use aperylift_core::pairs::{NamedPair, PairName};
use aperylift_core::rational::{int, rat, ten_to_minus};
use aperylift_core::{Rational, SolutionSeq};

fn pair(name: PairName, n_max: i64) -> (SolutionSeq, SolutionSeq) {
    NamedPair::get(name).solutions(n_max).unwrap()
}

#[test]
fn golden_ratio_and_square_root_of_two() {
    let (a, b) = pair(PairName::Fib, 42);
    let cand = CandidateCoefficients::from_abc(int(-1), int(1), rat(-1, 2)).unwrap();
    let rep = degree_test(&a, &b, &cand, 40).unwrap();
    assert_eq!(rep.verdict, Verdict::Vanishing);
    assert_eq!(rep.implied_polynomial_text, "x^2 - x - 1");

    let (a, b) = pair(PairName::Pell, 42);
    let cand = CandidateCoefficients::from_abc(int(-2), int(1), int(0)).unwrap();
    let rep = degree_test(&a, &b, &cand, 40).unwrap();
    assert_eq!(rep.verdict, Verdict::Vanishing);
    assert_eq!(rep.implied_polynomial_text, "x^2 - 2");
    // the ratio trace is exactly zero-free but tiny
    let last = rep.ratio_trace.last().unwrap();
    assert!(last.ratio.value().abs() < ten_to_minus(20));
}

#[test]
fn wrong_candidate_converges_to_nonzero() {
    let (a, b) = pair(PairName::Pell, 42);
    let cand = CandidateCoefficients::from_abc(int(-3), int(1), int(0)).unwrap();
    let rep = degree_test(&a, &b, &cand, 40).unwrap();
    assert_eq!(rep.verdict, Verdict::ConvergingNonzero);
    // x^2 − 3 at √2 is −1
    let at = rep.polynomial_at_limit.unwrap();
    assert!(at.contains(&int(-1)) || (at.value() + int(1)).abs() < ten_to_minus(10));
}

#[test]
fn candidate_recovered_from_samples() {
    let (a, b) = pair(PairName::Fib, 30);
    let basis = LiftedBasis::new(&a, &b, 2).unwrap();
    let truth = CandidateCoefficients::from_integers(&[2, -2, 1]).unwrap();
    let samples: Vec<(i64, Rational)> = [5, 9, 14].iter().map(|&n| (n, truth.evaluate(&basis, n).unwrap())).collect();
    let found = candidate_from_samples(&basis, &samples).unwrap();
    assert_eq!(found, truth);
}

#[test]
fn no_small_certificate_for_zeta3() {
    let (a, b) = pair(PairName::Apery3, 42);
    assert!(bounded_height_scan(&a, &b, 2, 4, 40).unwrap().is_empty());
    let (a, b) = pair(PairName::Pell, 42);
    let hits = bounded_height_scan(&a, &b, 2, 2, 40).unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].implied_polynomial_text, "x^2 - 2");
}

#[test]
fn primitive_vector_count() {
    // primitive vectors in [−1,1]^3 up to sign: (27 − 1) / 2
    assert_eq!(primitive_vectors(3, 1).len(), 13);
    assert!(primitive_vectors(3, 2).iter().all(|v| v.iter().any(|x| *x != 0)));
}

#[test]
fn polynomial_text() {
    assert_eq!(format_polynomial(&[int(2), int(0), rat(-1, 3)]), "2x^2 - 1/3");
    assert_eq!(format_polynomial(&[Rational::zero(), int(1)]), "1");
}

#[test]
fn limit_enclosures_nest() {
    let (a, b) = pair(PairName::Apery3, 40);
    let coarse = limit_estimate(&a, &b, 10).unwrap();
    let fine = limit_estimate(&a, &b, 30).unwrap();
    assert!(fine.radius() < coarse.radius());
    assert!(coarse.overlaps(&fine));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scaling_scales_the_trace(k in (-40i64..40).prop_filter("nonzero", |k| *k != 0), x in -5i64..5, y in -5i64..5, z in 1i64..5) {
        let (a, b) = pair(PairName::Apery3, 24);
        let cand = CandidateCoefficients::from_integers(&[x, y, z]).unwrap();
        let scaled = cand.scaled(&int(k));
        let r1 = degree_test(&a, &b, &cand, 22).unwrap();
        let r2 = degree_test(&a, &b, &scaled, 22).unwrap();
        for (p, q) in r1.ratio_trace.iter().zip(&r2.ratio_trace) {
            prop_assert_eq!(q.ratio.value(), &(p.ratio.value() * int(k)));
        }
        let implied: Vec<Rational> = r1.implied_polynomial.iter().map(|c| c * int(k)).collect();
        prop_assert_eq!(r2.implied_polynomial, implied);
    }

    #[test]
    fn recessive_trace_decreases(lo in 1i64..10, len in 5i64..25) {
        let (a, b) = pair(PairName::Apery3, 80);
        let limit = b.at(80).unwrap() / a.at(80).unwrap();
        let trace = recessive_trace(&a, &b, &limit, lo, lo + len);
        prop_assert_eq!(trace.len() as i64, len + 1);
        for w in trace.windows(2) {
            prop_assert!(w[1].1 < w[0].1);
        }
    }

    #[test]
    fn limit_radius_is_monotone(n in 3i64..40) {
        let (a, b) = pair(PairName::Apery3, 45);
        let x = limit_estimate(&a, &b, n).unwrap();
        let y = limit_estimate(&a, &b, n + 1).unwrap();
        prop_assert!(y.radius() <= x.radius());
        prop_assert!(x.overlaps(&y));
    }
}
