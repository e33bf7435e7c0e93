use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;

use aperylift_core::cache::SequenceCache;
use aperylift_core::coeff::poly_coeff;
use aperylift_core::rational::{int, rat};
use aperylift_core::{
    casoratian, casoratian_constant, disconjugacy_report, propagate, to_self_adjoint, CoeffExpr, Poly, Rational,
    Recurrence,
};

/// `c_n = n^2 + p n + q`, `b_n = 2n^2 + r n + s`: arbitrary polynomial
/// coefficients with `c_n > 0` for `n ≥ 0`.
fn random_recurrence(p: i64, q: i64, r: i64, s: i64) -> Arc<Recurrence> {
    Arc::new(Recurrence::three_term(poly_coeff(&[q, p, 1]), poly_coeff(&[s, r, 2]), 1))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

#[test]
fn period_six_values() {
    let rec = Arc::new(Recurrence::three_term(poly_coeff(&[1]), poly_coeff(&[1]), 1));
    // with c = 1, b = 1: y_{n+1} = y_n - y_{n-1}, period six
    let seq = propagate(&rec, &[int(0), int(1)], 12).unwrap();
    let expected = [0, 1, 1, 0, -1, -1, 0, 1, 1, 0, -1, -1, 0];
    assert_eq!(seq.values(), expected.map(int));
    assert_eq!(seq.first_violation().unwrap(), None);
}

#[test]
fn self_adjoint_conversion_telescopes() {
    // (n+1) y_{n+1} + n y_{n-1} = (2n+1) y_n has q_n = p_{n-1}
    let p: CoeffExpr = "n+1".parse().unwrap();
    let q: CoeffExpr = "n".parse().unwrap();
    let r: CoeffExpr = "2n+1".parse().unwrap();
    let rec = Arc::new(to_self_adjoint(&p, &q, &r, &int(1), 20).unwrap());
    assert!(rec.coeffs()[0].table_range().is_none());
    let y = propagate(&rec, &[int(1), int(2)], 20).unwrap();
    for n in 1..20 {
        let lhs = int(n + 1) * y.at(n + 1).unwrap() + int(n) * y.at(n - 1).unwrap();
        assert_eq!(lhs, int(2 * n + 1) * y.at(n).unwrap());
    }
}

#[test]
fn self_adjoint_conversion_tabulated() {
    // (n+1) y_{n+1} + n^2 y_{n-1} = (3n+1) y_n: no telescoping
    let p: CoeffExpr = "n+1".parse().unwrap();
    let q: CoeffExpr = "n^2".parse().unwrap();
    let r: CoeffExpr = "3n+1".parse().unwrap();
    let rec = Arc::new(to_self_adjoint(&p, &q, &r, &int(1), 15).unwrap());
    let y = propagate(&rec, &[int(1), int(1)], 15).unwrap();
    for n in 1..15 {
        let lhs = int(n + 1) * y.at(n + 1).unwrap() + int(n * n) * y.at(n - 1).unwrap();
        assert_eq!(lhs, int(3 * n + 1) * y.at(n).unwrap());
    }
}

#[test]
fn disconjugacy_of_known_pairs() {
    let rec = Recurrence::three_term(poly_coeff(&[1, 3, 3, 1]), poly_coeff(&[5, 27, 51, 34]), 1);
    let rep = disconjugacy_report(&rec, 1, 30).unwrap();
    assert!(rep.disconjugate_on_range);
    assert_eq!(rep.reciprocal_summable, Some(true));
    // b_n - c_n - c_{n-1} at n = 1: 117 - 8 - 1
    assert_eq!(rep.rows[0].excess, int(108));

    let border = Recurrence::three_term(poly_coeff(&[1, 1]), poly_coeff(&[1, 2]), 1);
    let rep = disconjugacy_report(&border, 1, 30).unwrap();
    assert!(!rep.excess_positive);
    assert_eq!(rep.reciprocal_summable, Some(false));
}

#[test]
fn poly_text_round_trip() {
    let p: Poly = "34n^3+51n^2+27n+5".parse().unwrap();
    assert_eq!(p.eval(2), (34 * 8 + 51 * 4 + 27 * 2 + 5).into());
    let again: Poly = p.to_string().parse().unwrap();
    assert_eq!(again, p);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = SequenceCache::new(dir.path());
    let rec = random_recurrence(2, 3, -1, 7);
    let init = [int(1), rat(1, 2)];
    let seq = cache.get_or_propagate("demo", &rec, &init, 40).unwrap();
    let loaded = cache.load("demo", &rec, &init).unwrap().expect("cached");
    assert_eq!(loaded.values(), seq.values());
    let shorter = cache.get_or_propagate("demo", &rec, &init, 25).unwrap();
    assert_eq!(shorter.values(), &seq.values()[..shorter.values().len()]);

    let other = random_recurrence(2, 3, -1, 8);
    assert!(cache.load("demo", &other, &init).unwrap().is_none());
}

#[test]
fn cache_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cache = SequenceCache::new(dir.path());
    let rec = random_recurrence(0, 1, 0, 3);
    let init = [int(1), int(2)];
    cache.get_or_propagate("t", &rec, &init, 30).unwrap();
    let path = cache.path_for("t");
    let text = std::fs::read_to_string(&path).unwrap();
    let last = text.lines().last().unwrap().to_string();
    let (idx, _) = last.split_once('\t').unwrap();
    let text = text.replace(&last, &format!("{idx}\t1/1"));
    std::fs::write(&path, text).unwrap();
    assert!(cache.load("t", &rec, &init).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagation_is_linear(
        p in 0i64..5, q in 1i64..6, r in -3i64..4, s in 1i64..9,
        u0 in small_rational(), u1 in small_rational(),
        w0 in small_rational(), w1 in small_rational(),
        k in small_rational(),
    ) {
        let rec = random_recurrence(p, q, r, s);
        let u = propagate(&rec, &[u0.clone(), u1.clone()], 25).unwrap();
        let w = propagate(&rec, &[w0.clone(), w1.clone()], 25).unwrap();
        let mix = propagate(&rec, &[&u0 + &k * &w0, &u1 + &k * &w1], 25).unwrap();
        for n in 0..=25 {
            prop_assert_eq!(mix.at(n).unwrap(), &(u.at(n).unwrap() + &k * w.at(n).unwrap()));
        }
    }

    #[test]
    fn casoratian_times_c_is_constant(
        p in 0i64..5, q in 1i64..6, r in -3i64..4, s in 1i64..9,
        u0 in small_rational(), u1 in small_rational(),
        w0 in small_rational(), w1 in small_rational(),
    ) {
        let rec = random_recurrence(p, q, r, s);
        let u = propagate(&rec, &[u0, u1], 20).unwrap();
        let w = propagate(&rec, &[w0, w1], 20).unwrap();
        let alpha = casoratian_constant(&u, &w).unwrap();
        for n in 1..=20i64 {
            let c_prev = Rational::from_integer(((n - 1) * (n - 1) + p * (n - 1) + q).into());
            prop_assert_eq!(c_prev * casoratian(&u, &w, n).unwrap(), alpha.clone());
        }
    }

    #[test]
    fn polynomial_shift_matches_evaluation(coeffs in prop::collection::vec(-9i64..10, 1..6), k in -5i64..6, n in -10i64..10) {
        let p = Poly::from_coeffs(&coeffs);
        prop_assert_eq!(p.shift(k).eval(n), p.eval(n + k));
    }

    #[test]
    fn polynomial_tail_bound_dominates(c in 1i64..5, d in 0i64..5, n in 1i64..15) {
        // Σ_{j ≥ n} 1/(c j^2 + d)^2 against a long partial sum
        let p = Poly::from_coeffs(&[d, 0, c]);
        let bound = p.reciprocal_tail_bound(2, n).unwrap();
        let mut partial = Rational::zero();
        for j in n..n + 400 {
            let v = Rational::from_integer(p.eval(j));
            partial += Rational::one() / (&v * &v);
        }
        prop_assert!(partial < bound);
    }
}
