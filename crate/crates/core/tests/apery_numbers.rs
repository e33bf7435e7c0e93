use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use aperylift_core::apery::{apery_a, apery_b, integrality_check, lcm_up_to, uniqueness_probe, AperyPair, LcmTable, Variant};
use aperylift_core::rational::{big, int, rat};
use aperylift_core::Rational;

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Double sum written out term by term, without shared prefix sums.
fn b_direct(n: u64, variant: Variant) -> Rational {
    let mut total = Rational::zero();
    for k in 0..=n {
        let w = match variant {
            Variant::Zeta3 => (binom(n, k) * binom(n + k, k)).pow(2),
            Variant::Zeta2 => binom(n, k).pow(2) * binom(n + k, k),
        };
        let mut s = Rational::zero();
        for m in 1..=n as i64 {
            s += match variant {
                Variant::Zeta3 => rat(1, m.pow(3)),
                Variant::Zeta2 => rat(2 * if m % 2 == 1 { 1 } else { -1 }, m * m),
            };
        }
        for m in 1..=k as i64 {
            let d = big(binom(n, m as u64) * binom(n + m as u64, m as u64));
            s += match variant {
                Variant::Zeta3 => rat(if m % 2 == 1 { 1 } else { -1 }, 2 * m.pow(3)) / d,
                Variant::Zeta2 => rat(if (n as i64 + m) % 2 == 1 { 1 } else { -1 }, m * m) / d,
            };
        }
        total += big(w) * s;
    }
    total
}

#[test]
fn first_values() {
    let a3: Vec<BigInt> = (0..5).map(|n| apery_a(n, Variant::Zeta3)).collect();
    assert_eq!(a3, [1, 5, 73, 1445, 33001].map(BigInt::from));
    let a2: Vec<BigInt> = (0..5).map(|n| apery_a(n, Variant::Zeta2)).collect();
    assert_eq!(a2, [1, 3, 19, 147, 1251].map(BigInt::from));
    assert_eq!(apery_b(2, Variant::Zeta3), rat(351, 4));
    assert_eq!(apery_b(3, Variant::Zeta3), rat(62531, 36));
    assert_eq!(apery_b(2, Variant::Zeta2), rat(125, 4));
}

#[test]
fn closed_forms_against_direct_sums_and_recurrence() {
    for variant in [Variant::Zeta3, Variant::Zeta2] {
        let pair = AperyPair::propagate(variant, 40).unwrap();
        for n in 0..=40u64 {
            let b = b_direct(n, variant);
            assert_eq!(apery_b(n, variant), b, "{variant} n = {n}");
            assert_eq!(pair.b_seq.at(n as i64).unwrap(), &b);
            assert_eq!(pair.a_seq.at(n as i64).unwrap(), &big(apery_a(n, variant)));
        }
    }
}

#[test]
fn integrality_report() {
    let rep = integrality_check(60).unwrap();
    assert!(rep.all_pass);
    assert_eq!(rep.rows.len(), 60);
    // 2·lcm(1,2)^3·351/4 = 1404
    assert_eq!(rep.rows[1].cleared, int(1404));
}

#[test]
fn only_multiples_of_a_stay_integral() {
    let rep = uniqueness_probe(&int(1), &int(5), 40).unwrap();
    assert!(rep.decomposition_holds);
    assert_eq!(rep.first_non_integer, None);

    let rep = uniqueness_probe(&int(0), &int(6), 40).unwrap();
    assert!(rep.decomposition_holds);
    assert_eq!(rep.first_non_integer, Some(2));
    assert_eq!(rep.first_non_integer_value, Some(rat(351, 4)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn integer_starts_decompose(d0 in -50i64..50, d1 in -50i64..50) {
        let rep = uniqueness_probe(&int(d0), &int(d1), 25).unwrap();
        prop_assert!(rep.decomposition_holds);
        if d1 != 5 * d0 {
            // a small admixture of B leaves the integers within the range
            prop_assert!(rep.first_non_integer.is_some());
        } else {
            prop_assert!(rep.first_non_integer.is_none());
        }
    }

    #[test]
    fn lcm_table_matches_fold(n in 1u64..200) {
        let expected = (1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
        prop_assert_eq!(LcmTable::new(n).get(n).clone(), expected.clone());
        prop_assert_eq!(lcm_up_to(n), expected);
    }
}
