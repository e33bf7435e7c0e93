//! Closed forms of the Apéry sequences, lcm tables and the integrality
//! checks on `2·lcm(1..n)^3·B_n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::pairs::{NamedPair, PairName};
use crate::rational::{self, big, int, rat, Rational};
use crate::recurrence::{propagate, RecurrenceError, SolutionSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Zeta3,
    Zeta2,
}

impl Variant {
    pub fn pair(self) -> NamedPair {
        NamedPair::get(match self {
            Variant::Zeta3 => PairName::Apery3,
            Variant::Zeta2 => PairName::Apery2,
        })
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Zeta3 => "zeta3",
            Variant::Zeta2 => "zeta2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown variant {0:?} (expected zeta3 or zeta2)")]
pub struct UnknownVariant(String);

impl FromStr for Variant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "zeta3" | "apery3" => Ok(Variant::Zeta3),
            "zeta2" | "apery2" => Ok(Variant::Zeta2),
            _ => Err(UnknownVariant(s.to_string())),
        }
    }
}

/// `(C(n,k), C(n+k,k))` for `k = 0..=n`, built incrementally.
fn binomial_rows(n: u64) -> Vec<(BigInt, BigInt)> {
    let mut rows = Vec::with_capacity(n as usize + 1);
    let (mut c1, mut c2) = (BigInt::one(), BigInt::one());
    for k in 0..=n {
        rows.push((c1.clone(), c2.clone()));
        c1 = c1 * (n - k) / (k + 1);
        c2 = c2 * (n + k + 1) / (k + 1);
    }
    rows
}

fn weight(variant: Variant, binom: &(BigInt, BigInt)) -> BigInt {
    let (c1, c2) = binom;
    match variant {
        Variant::Zeta3 => (c1 * c2).pow(2),
        Variant::Zeta2 => c1 * c1 * c2,
    }
}

/// `Σ_k C(n,k)^2 C(n+k,k)^2` (ζ(3)) or `Σ_k C(n,k)^2 C(n+k,k)` (ζ(2)).
pub fn apery_a(n: u64, variant: Variant) -> BigInt {
    binomial_rows(n).iter().map(|b| weight(variant, b)).sum()
}

/// The companion rational sequence: each summand of `apery_a` weighted by a
/// harmonic-type prefix sum plus a correction summed over `m ≤ k`.
pub fn apery_b(n: u64, variant: Variant) -> Rational {
    let rows = binomial_rows(n);
    let mut head = Rational::zero();
    for m in 1..=n as i64 {
        head += match variant {
            Variant::Zeta3 => rat(1, m * m * m),
            Variant::Zeta2 => rat(if m % 2 == 1 { 2 } else { -2 }, m * m),
        };
    }
    let mut total = Rational::zero();
    let mut inner = Rational::zero();
    for (k, binom) in rows.iter().enumerate() {
        if k > 0 {
            let m = k as i64;
            let (c1, c2) = binom;
            let denom = big(c1 * c2);
            inner += match variant {
                Variant::Zeta3 => {
                    let sign = if m % 2 == 1 { 1 } else { -1 };
                    rat(sign, 2 * m * m * m) / denom
                }
                Variant::Zeta2 => {
                    let sign = if (n as i64 + m) % 2 == 1 { 1 } else { -1 };
                    rat(sign, m * m) / denom
                }
            };
        }
        total += big(weight(variant, binom)) * (&head + &inner);
    }
    total
}

/// Closed forms for `0..=n_max`, evaluated in parallel.
pub fn closed_forms(variant: Variant, n_max: u64) -> Vec<(BigInt, Rational)> {
    (0..=n_max).into_par_iter().map(|n| (apery_a(n, variant), apery_b(n, variant))).collect()
}

#[derive(Clone, Debug)]
pub struct AperyPair {
    pub variant: Variant,
    pub a_seq: SolutionSeq,
    pub b_seq: SolutionSeq,
}

impl AperyPair {
    pub fn propagate(variant: Variant, n_max: i64) -> Result<AperyPair, RecurrenceError> {
        let (a_seq, b_seq) = variant.pair().solutions(n_max)?;
        Ok(AperyPair { variant, a_seq, b_seq })
    }
}

/// `values[n] = lcm(1..n)`, with `values[0] = 1`.
#[derive(Clone, Debug)]
pub struct LcmTable {
    values: Vec<BigInt>,
}

impl LcmTable {
    pub fn new(n_max: u64) -> Self {
        let mut values = Vec::with_capacity(n_max as usize + 1);
        values.push(BigInt::one());
        for n in 1..=n_max {
            let prev = values.last().unwrap();
            values.push(prev.lcm(&BigInt::from(n)));
        }
        LcmTable { values }
    }

    pub fn get(&self, n: u64) -> &BigInt {
        &self.values[n as usize]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn lcm_up_to(n: u64) -> BigInt {
    LcmTable::new(n).get(n).clone()
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityRow {
    pub n: u64,
    /// `2·lcm(1..n)^3·B_n`
    #[serde(serialize_with = "rational::json::rational")]
    pub cleared: Rational,
    pub integral: bool,
    pub divisible_by_6: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityReport {
    pub n_max: u64,
    pub rows: Vec<IntegralityRow>,
    pub first_failure: Option<u64>,
    pub all_pass: bool,
}

/// Check `2·lcm(1..n)^3·B_n ∈ ℤ` and `6 | 2·lcm(1..n)^3·B_n` for `1 ≤ n ≤ n_max`
/// on the recurrence-propagated ζ(3) sequence.
pub fn integrality_check(n_max: u64) -> Result<IntegralityReport, RecurrenceError> {
    let pair = Variant::Zeta3.pair();
    let b = propagate(&pair.recurrence, &pair.b_initial, n_max as i64)?;
    let lcm = LcmTable::new(n_max);
    let rows: Vec<IntegralityRow> = (1..=n_max)
        .map(|n| {
            let cleared = big(lcm.get(n).pow(3) * 2u32) * b.at(n as i64).expect("propagated");
            let integral = rational::is_integer(&cleared);
            let divisible_by_6 = integral && cleared.numer().is_multiple_of(&BigInt::from(6));
            IntegralityRow { n, cleared, integral, divisible_by_6 }
        })
        .collect();
    let first_failure = rows.iter().find(|r| !r.divisible_by_6).map(|r| r.n);
    Ok(IntegralityReport { n_max, rows, first_failure, all_pass: first_failure.is_none() })
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    #[serde(serialize_with = "rational::json::rational")]
    pub d0: Rational,
    #[serde(serialize_with = "rational::json::rational")]
    pub d1: Rational,
    /// `D_n = coeff_a·A_n − coeff_b·B_n` with `coeff_a = D_0`, `coeff_b = (5D_0 − D_1)/6`.
    #[serde(serialize_with = "rational::json::rational")]
    pub coeff_a: Rational,
    #[serde(serialize_with = "rational::json::rational")]
    pub coeff_b: Rational,
    /// Decomposition re-checked against the propagated `D_n` at every index.
    pub decomposition_holds: bool,
    pub first_non_integer: Option<i64>,
    #[serde(serialize_with = "rational::json::opt_rational")]
    pub first_non_integer_value: Option<Rational>,
}

/// Propagate the ζ(3) recurrence from `(D_0, D_1)` and locate the first
/// non-integer value; only multiples of `A_n` stay integral.
pub fn uniqueness_probe(d0: &Rational, d1: &Rational, n_max: i64) -> Result<UniquenessReport, RecurrenceError> {
    let pair = Variant::Zeta3.pair();
    let d = propagate(&pair.recurrence, &[d0.clone(), d1.clone()], n_max)?;
    let a = propagate(&pair.recurrence, &pair.a_initial, n_max)?;
    let b = propagate(&pair.recurrence, &pair.b_initial, n_max)?;
    let coeff_a = d0.clone();
    let coeff_b = (int(5) * d0 - d1) / int(6);
    let decomposition_holds =
        d.iter().all(|(n, v)| *v == &coeff_a * a.at(n).unwrap() - &coeff_b * b.at(n).unwrap());
    let first = d.iter().find(|(_, v)| !rational::is_integer(v));
    Ok(UniquenessReport {
        d0: d0.clone(),
        d1: d1.clone(),
        coeff_a,
        coeff_b,
        decomposition_holds,
        first_non_integer: first.map(|(n, _)| n),
        first_non_integer_value: first.map(|(_, v)| v.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let a3: Vec<BigInt> = (0..7).map(|n| apery_a(n, Variant::Zeta3)).collect();
        assert_eq!(a3, [1, 5, 73, 1445, 33001, 819005, 21460825].map(BigInt::from));
        let a2: Vec<BigInt> = (0..4).map(|n| apery_a(n, Variant::Zeta2)).collect();
        assert_eq!(a2, [1, 3, 19, 147].map(BigInt::from));
        assert_eq!(apery_b(0, Variant::Zeta3), int(0));
        assert_eq!(apery_b(1, Variant::Zeta3), int(6));
        assert_eq!(apery_b(2, Variant::Zeta3), rat(351, 4));
        assert_eq!(apery_b(3, Variant::Zeta3), rat(62531, 36));
        assert_eq!(apery_b(1, Variant::Zeta2), int(5));
        assert_eq!(apery_b(2, Variant::Zeta2), rat(125, 4));
        assert_eq!(apery_b(3, Variant::Zeta2), rat(8705, 36));
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_up_to(1), BigInt::from(1));
        assert_eq!(lcm_up_to(6), BigInt::from(60));
        assert_eq!(lcm_up_to(10), BigInt::from(2520));
    }

    #[test]
    fn integrality_small() {
        let rep = integrality_check(3).unwrap();
        let cleared: Vec<Rational> = rep.rows.iter().map(|r| r.cleared.clone()).collect();
        assert_eq!(cleared, vec![int(12), int(1404), int(750372)]);
        assert!(rep.all_pass);
    }

    #[test]
    fn uniqueness_examples() {
        let rep = uniqueness_probe(&int(1), &int(5), 30).unwrap();
        assert_eq!((rep.coeff_a.clone(), rep.coeff_b.clone()), (int(1), int(0)));
        assert_eq!(rep.first_non_integer, None);

        let rep = uniqueness_probe(&int(1), &int(1), 20).unwrap();
        assert_eq!(rep.coeff_b, rat(2, 3));
        assert!(rep.decomposition_holds);
        assert!(rep.first_non_integer.is_some_and(|n| n <= 20));

        let rep = uniqueness_probe(&int(0), &int(6), 10).unwrap();
        assert_eq!(rep.coeff_b, int(-1));
        assert_eq!(rep.first_non_integer, Some(2));
        assert_eq!(rep.first_non_integer_value, Some(rat(351, 4)));
    }
}
