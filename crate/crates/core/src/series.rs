//! Exact partial sums with rigorous tails: the accelerated ζ(3) series, the
//! classical central-binomial series, series for ζ(3)^m and ζ(2)^m built from
//! the Apéry sequences, the telescoped limit series of a three-term
//! recurrence, and two rational-plus-ζ(3) identities.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::apery::Variant;
use crate::bounded::BoundedValue;
use crate::pairs::{NamedPair, PairName};
use crate::poly::Poly;
use crate::rational::{self, big, binomial, int, pow10, rat, Rational};
use crate::recurrence::{propagate, RecurrenceError, SolutionSeq};
use crate::reference::reference_zeta;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeriesError {
    #[error("at least one term is required")]
    NoTerms,
    #[error("no encoded series for {variant}^{m}")]
    UnsupportedPower { variant: Variant, m: u32 },
    #[error("tail certificate failed at n = {n}: {reason}")]
    TailCertificate { n: i64, reason: &'static str },
    #[error("zero denominator at n = {0}")]
    ZeroDenominator(i64),
    #[error("zeta({s}) to {digits} digits is not available (s must be 2 or 3, digits at most 60)")]
    PrecisionUnreachable { s: u32, digits: u32 },
    #[error("reference radius must be at least 10x smaller than the approximation radius")]
    ReferenceTooCoarse,
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

/// Extra terms evaluated past the partial sum to re-check the tail certificate.
const LOOKAHEAD: usize = 4;
/// Ratio bound for positive-term series; the tail is at most `next·30/29`.
const RATIO_BOUND: i64 = 30;

/// `terms[i]` is the term at `n = i+1`; the first `used` are summed. Every
/// term must be positive and each ratio `t_{n+1}/t_n` below `1/30`.
fn positive_tail(terms: &[Rational], used: usize) -> Result<Rational, SeriesError> {
    for (i, t) in terms.iter().enumerate() {
        if !t.is_positive() {
            return Err(SeriesError::TailCertificate { n: i as i64 + 1, reason: "term not positive" });
        }
        if i > 0 && t * int(RATIO_BOUND) >= terms[i - 1] {
            return Err(SeriesError::TailCertificate { n: i as i64 + 1, reason: "term ratio not below 1/30" });
        }
    }
    Ok(&terms[used] * rat(RATIO_BOUND, RATIO_BOUND - 1))
}

/// Alternating-series bound: signs alternate and magnitudes decrease over
/// the computed range; the tail is at most the first omitted magnitude.
fn alternating_tail(terms: &[Rational], used: usize) -> Result<Rational, SeriesError> {
    for i in 1..terms.len() {
        let n = i as i64 + 1;
        if terms[i].is_zero() || terms[i].is_positive() == terms[i - 1].is_positive() {
            return Err(SeriesError::TailCertificate { n, reason: "signs do not alternate" });
        }
        if terms[i].abs() >= terms[i - 1].abs() {
            return Err(SeriesError::TailCertificate { n, reason: "magnitudes not decreasing" });
        }
    }
    Ok(terms[used].abs())
}

fn check_terms(terms: usize) -> Result<(), SeriesError> {
    if terms == 0 {
        Err(SeriesError::NoTerms)
    } else {
        Ok(())
    }
}

fn apery_sequences(variant: Variant, n_max: i64) -> Result<(SolutionSeq, SolutionSeq), SeriesError> {
    Ok(variant.pair().solutions(n_max)?)
}

/// `6 Σ_{n≥1} 1/(n³ A_n A_{n−1})`.
pub fn zeta3_accel(terms: usize) -> Result<BoundedValue, SeriesError> {
    check_terms(terms)?;
    let total = terms + 1 + LOOKAHEAD;
    let (a, _) = apery_sequences(Variant::Zeta3, total as i64)?;
    let ts: Vec<Rational> = (1..=total as i64)
        .map(|n| int(6) / (int(n * n * n) * a.at(n).unwrap() * a.at(n - 1).unwrap()))
        .collect();
    let sum: Rational = ts[..terms].iter().sum();
    let radius = positive_tail(&ts, terms)?;
    Ok(BoundedValue::new(sum, radius, 40))
}

/// `(5/2) Σ_{n≥1} (−1)^{n−1} / (n³ C(2n, n))`.
pub fn zeta3_apery_series(terms: usize) -> Result<BoundedValue, SeriesError> {
    check_terms(terms)?;
    let ts: Vec<Rational> = (1..=(terms + 1 + LOOKAHEAD) as u64)
        .map(|n| {
            let sign = if n % 2 == 1 { 5 } else { -5 };
            rat(sign, 2) / big(binomial(2 * n, n) * BigInt::from(n).pow(3))
        })
        .collect();
    let sum: Rational = ts[..terms].iter().sum();
    let radius = alternating_tail(&ts, terms)?;
    Ok(BoundedValue::new(sum, radius, 40))
}

/// A series for ζ(3)^m or ζ(2)^m. With `e` the exponent (3 or 2) the n-th term
/// is
///
/// `sign·c·lead(n)·Π_pairs (p(n)B_n − q(n)B_{n−1}n^e)·B_n
///   / (n^e Π_{i=1}^{m−1}(n+i)^{e(m−i)} Π_{i=n−1}^{n+m−1} A_i)`
///
/// where `sign = (−1)^{n−1}` for ζ(2) and `+1` for ζ(3).
#[derive(Clone, Debug, Serialize)]
pub struct PowerSeriesSpec {
    pub variant: Variant,
    pub m: u32,
    #[serde(serialize_with = "rational::json::rational")]
    pub constant: Rational,
    pub lead: Poly,
    pub pairs: Vec<(Poly, Poly)>,
    pub exponent: u32,
    pub alternating: bool,
}

fn p(coeffs: &[i64]) -> Poly {
    Poly::from_coeffs(coeffs)
}

/// Encoded polynomial tables, coefficients in ascending order.
pub mod tables {
    use super::p;
    use crate::poly::Poly;

    pub fn zeta3_b() -> Poly {
        p(&[5, 27, 51, 34])
    }

    pub fn zeta3_lead3() -> Poly {
        p(&[584, 4308, 12954, 20040, 16560, 6930, 1155])
    }

    pub fn zeta3_lead4() -> Poly {
        p(&[3, 2]) * p(&[52020, 411198, 1362947, 2441061, 2554545, 1600641, 589827, 117708, 9809])
    }

    pub fn zeta3_lead5() -> Poly {
        p(&[
            456205824,
            4300387200,
            17812032480,
            42618151360,
            65389823136,
            67836980844,
            48939099945,
            24829342992,
            8825260041,
            2150577460,
            342113817,
            31988856,
            1332869,
        ])
    }

    /// Second member of the pair whose first member is `zeta3_lead3`.
    pub fn zeta3_pair3_second() -> Poly {
        p(&[117, 231, 153, 34])
    }

    pub fn zeta3_pair4_first() -> Poly {
        p(&[312120, 2675268, 9822474, 20098154, 25091514, 19822026, 9941526, 3065556, 529686, 39236])
    }

    pub fn zeta3_pair4_second() -> Poly {
        p(&[62531, 198156, 259059, 178680, 68535, 13860, 1155])
    }

    pub fn zeta2_b() -> Poly {
        p(&[3, 11, 11])
    }

    pub fn zeta2_lead3() -> Poly {
        p(&[76, 378, 677, 488, 122])
    }
}

impl PowerSeriesSpec {
    pub fn builtin(variant: Variant, m: u32) -> Result<PowerSeriesSpec, SeriesError> {
        use tables::*;
        let unsupported = SeriesError::UnsupportedPower { variant, m };
        let (constant, lead, pairs, exponent, alternating) = match variant {
            Variant::Zeta3 => {
                let all_pairs = [
                    (zeta3_b(), Poly::one()),
                    (zeta3_lead3(), zeta3_pair3_second()),
                    (zeta3_pair4_first(), zeta3_pair4_second()),
                ];
                let (c, lead) = match m {
                    2 => (6, zeta3_b()),
                    3 => (6, zeta3_lead3()),
                    4 => (12, zeta3_lead4()),
                    5 => (6, zeta3_lead5()),
                    _ => return Err(unsupported),
                };
                (c, lead, all_pairs[..m as usize - 2].to_vec(), 3, false)
            }
            Variant::Zeta2 => {
                let (lead, pairs) = match m {
                    2 => (zeta2_b(), vec![]),
                    3 => (zeta2_lead3(), vec![(zeta2_b(), p(&[-1]))]),
                    _ => return Err(unsupported),
                };
                (5, lead, pairs, 2, true)
            }
        };
        Ok(PowerSeriesSpec { variant, m, constant: int(constant), lead, pairs, exponent, alternating })
    }

    /// The n-th term (`n ≥ 1`); `a`, `b` must reach index `n+m−1`.
    pub fn term(&self, n: i64, a: &SolutionSeq, b: &SolutionSeq) -> Result<Rational, SeriesError> {
        let m = self.m as i64;
        let e = self.exponent;
        let bn = b.at(n)?;
        let bprev_scaled = b.at(n - 1)? * big(BigInt::from(n).pow(e));
        let mut num = &self.constant * big(self.lead.eval(n)) * bn;
        for (first, second) in &self.pairs {
            num *= big(first.eval(n)) * bn - big(second.eval(n)) * &bprev_scaled;
        }
        let mut den = BigInt::from(n).pow(e);
        for i in 1..m {
            den *= BigInt::from(n + i).pow(e * (m - i) as u32);
        }
        let mut den = big(den);
        for i in n - 1..=n + m - 1 {
            let ai = a.at(i)?;
            if ai.is_zero() {
                return Err(SeriesError::ZeroDenominator(i));
            }
            den *= ai;
        }
        let t = num / den;
        Ok(if self.alternating && n % 2 == 0 { -t } else { t })
    }
}

/// Partial sum of the encoded series with the ratio (ζ(3)) or alternating
/// (ζ(2)) tail bound.
pub fn power_series_eval(spec: &PowerSeriesSpec, terms: usize) -> Result<BoundedValue, SeriesError> {
    check_terms(terms)?;
    let total = terms + 1 + LOOKAHEAD;
    let (a, b) = apery_sequences(spec.variant, (total + spec.m as usize) as i64)?;
    let ts: Vec<Rational> =
        (1..=total as i64).into_par_iter().map(|n| spec.term(n, &a, &b)).collect::<Result<_, _>>()?;
    let sum: Rational = ts[..terms].iter().sum();
    let radius = if spec.alternating { alternating_tail(&ts, terms)? } else { positive_tail(&ts, terms)? };
    Ok(BoundedValue::new(sum, radius, 40))
}

/// Telescoped form of `lim B_n/A_n`:
/// `B_s/A_s + α Σ_{n=s+1}^{N} 1/(c_{n−1} A_n A_{n−1})`.
#[derive(Clone, Debug, Serialize)]
pub struct LimitSeries {
    /// First index `s` with `A_s ≠ 0`; summation runs over `s+1..=last_index`.
    pub first_index: i64,
    pub last_index: i64,
    #[serde(serialize_with = "rational::json::rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "rational::json::rational")]
    pub partial_sum: Rational,
    /// Present when a ratio or alternating certificate held past `last_index`.
    #[serde(serialize_with = "rational::json::opt_rational")]
    pub tail_radius: Option<Rational>,
}

impl LimitSeries {
    pub fn bounded(&self, digits: u32) -> Option<BoundedValue> {
        self.tail_radius.as_ref().map(|r| BoundedValue::new(self.partial_sum.clone(), r.clone(), digits))
    }
}

/// Sum the telescoped series up to `A`'s index `terms` (so the result equals
/// `B_terms / A_terms` exactly). `b0`, `b1` are the initial values of `B` at
/// `A`'s base index; `A` must reach `terms`, and beyond that up to
/// `terms + 5` if a tail radius is wanted.
pub fn generic_limit_series(a: &SolutionSeq, b0: &Rational, b1: &Rational, terms: i64) -> Result<LimitSeries, SeriesError> {
    let rec = a.recurrence();
    let (c, _) = rec.as_three_term().ok_or(RecurrenceError::NotThreeTerm)?;
    let base = a.base_index();
    let start = (base..=a.last_index())
        .find(|&n| !a.at(n).unwrap().is_zero())
        .ok_or(SeriesError::ZeroDenominator(base))?;
    if terms <= start {
        return Err(SeriesError::NoTerms);
    }
    let b = propagate(rec, &[b0.clone(), b1.clone()], start + 1)?;
    let (as_, as1) = (a.at(start)?, a.at(start + 1)?);
    let alpha = c.eval(start)? * (as_ * b.at(start + 1)? - as1 * b.at(start)?);
    let term = |n: i64| -> Result<Rational, SeriesError> {
        let (an, ap) = (a.at(n)?, a.at(n - 1)?);
        if an.is_zero() {
            return Err(SeriesError::ZeroDenominator(n));
        }
        let cn = c.eval(n - 1)?;
        if cn.is_zero() {
            return Err(SeriesError::ZeroDenominator(n - 1));
        }
        Ok(&alpha / (cn * an * ap))
    };
    let mut sum = b.at(start)? / as_;
    for n in start + 1..=terms {
        sum += term(n)?;
    }
    let tail_radius = if a.last_index() >= terms + 1 + LOOKAHEAD as i64 {
        let ts: Vec<Rational> =
            (start + 1..=terms + 1 + LOOKAHEAD as i64).map(term).collect::<Result<_, _>>()?;
        let used = (terms - start) as usize;
        positive_tail(&ts, used).or_else(|_| alternating_tail(&ts, used)).ok()
    } else {
        None
    };
    Ok(LimitSeries { first_index: start, last_index: terms, alpha, partial_sum: sum, tail_radius })
}

/// One rational-plus-ζ(3) identity `Σ_{n≥1} f(n) = rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub terms: usize,
    pub partial_sum: BoundedValue,
    pub rhs: BoundedValue,
    /// Upper bound on `|partial sum − rhs|` with no tail correction.
    #[serde(serialize_with = "sci")]
    pub raw_residual: Rational,
    /// Enclosure of the full series: exact-to-2000 fixed-point sum plus an
    /// integral bound on the remainder.
    pub full_sum: BoundedValue,
    /// Upper bound on `|full series − rhs|`.
    #[serde(serialize_with = "sci")]
    pub certified_residual: Rational,
}

fn sci<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_sci_upper(x))
}

#[derive(Clone, Debug, Serialize)]
pub struct WilfReport {
    pub first: IdentityCheck,
    pub second: IdentityCheck,
    /// The second identity with the printed constant `10385/98304`, which
    /// does not hold; kept to document the discrepancy.
    pub second_as_printed: IdentityCheck,
    /// `|C_n/A_n − (29/32 − 3ζ(3)/4)|` at `n = 20` for `C_n = (29/32)A_n − (3/4)B_n`.
    pub combination_index: i64,
    #[serde(serialize_with = "sci")]
    pub combination_residual: Rational,
    /// `C_n` satisfies the ζ(3) recurrence exactly over the computed range.
    pub combination_is_solution: bool,
}

const WILF_CUTOFF: i64 = 2000;
const WILF_DIGITS: u32 = 50;

fn identity_check(
    name: &str,
    terms: usize,
    denom: impl Fn(i64) -> BigInt + Sync,
    decay: u32,
    rhs: BoundedValue,
) -> IdentityCheck {
    let partial: Rational = (1..=terms as i64).map(|n| big(denom(n)).recip()).sum();
    let partial = BoundedValue::exact(partial, 30);
    let raw_residual = partial.max_distance(&rhs);
    // fixed-point sum to the cutoff, then Σ_{n>N} f(n) ≤ Σ_{n>N} n^{−d} ≤ N^{1−d}/(d−1)
    let scale = pow10(WILF_DIGITS + 10);
    let fixed: BigInt = (1..=WILF_CUTOFF).into_par_iter().map(|n| &scale / denom(n)).sum();
    let remainder = big(BigInt::from(WILF_CUTOFF).pow(decay - 1) * (decay - 1)).recip();
    let radius = int(WILF_CUTOFF) / big(scale.clone()) + &remainder;
    let full_sum = BoundedValue::new(big(fixed) / big(scale) + remainder / int(2), radius, 30);
    let certified_residual = full_sum.max_distance(&rhs);
    IdentityCheck { name: name.to_string(), terms, partial_sum: partial, rhs, raw_residual, full_sum, certified_residual }
}

/// Check `Σ 1/(n(n+1)(n+2))³ = 29/32 − (3/4)ζ(3)` and
/// `Σ 1/(n(n+1)(n+2)(n+3)(n+4))³ = (5/768)ζ(3) − 10385/1327104`, both summed
/// from `n = 1`.
pub fn wilf_identities_check(terms: usize) -> Result<WilfReport, SeriesError> {
    check_terms(terms)?;
    let z3 = reference_zeta(3, WILF_DIGITS)?;
    let rhs1 = BoundedValue::exact(rat(29, 32), WILF_DIGITS).sub(&z3.scale(&rat(3, 4)));
    let rhs2 = z3.scale(&rat(5, 768)).sub(&BoundedValue::exact(rat(10385, 1327104), WILF_DIGITS));
    let rhs2_printed = z3.scale(&rat(5, 768)).sub(&BoundedValue::exact(rat(10385, 98304), WILF_DIGITS));
    let prod = |n: i64, k: i64| -> BigInt { (0..k).map(|i| BigInt::from(n + i)).product::<BigInt>().pow(3) };
    let first = identity_check("1/(n(n+1)(n+2))^3", terms, |n| prod(n, 3), 9, rhs1.clone());
    let second = identity_check("1/(n(n+1)(n+2)(n+3)(n+4))^3", terms, |n| prod(n, 5), 15, rhs2);
    let second_as_printed =
        identity_check("1/(n(n+1)(n+2)(n+3)(n+4))^3 (printed constant)", terms, |n| prod(n, 5), 15, rhs2_printed);

    let n = 20;
    let pair = NamedPair::get(PairName::Apery3);
    let (a, b) = pair.solutions(n + 2)?;
    let c_init: Vec<Rational> =
        (0..2).map(|i| rat(29, 32) * a.at(i).unwrap() - rat(3, 4) * b.at(i).unwrap()).collect();
    let c_seq = propagate(&pair.recurrence, &c_init, n + 2)?;
    let combination_is_solution = c_seq
        .iter()
        .all(|(k, v)| *v == rat(29, 32) * a.at(k).unwrap() - rat(3, 4) * b.at(k).unwrap())
        && c_seq.first_violation()?.is_none();
    let ratio = BoundedValue::exact(c_seq.at(n)? / a.at(n)?, WILF_DIGITS);
    let combination_residual = ratio.max_distance(&rhs1);

    Ok(WilfReport { first, second, second_as_printed, combination_index: n, combination_residual, combination_is_solution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ten_to_minus;
    use crate::reference::correct_digits;

    #[test]
    fn accel_first_terms() {
        let v = zeta3_accel(1).unwrap();
        assert_eq!(*v.value(), rat(6, 5));
        assert!(v.contains(reference_zeta(3, 30).unwrap().value()));
        assert!(*zeta3_accel(25).unwrap().radius() < ten_to_minus(70));
    }

    #[test]
    fn central_binomial_series() {
        assert_eq!(*zeta3_apery_series(1).unwrap().value(), rat(5, 4));
        assert_eq!(*zeta3_apery_series(2).unwrap().value(), rat(115, 96));
        let r = reference_zeta(3, 40).unwrap();
        assert_eq!(correct_digits(&zeta3_apery_series(5).unwrap(), &r).unwrap(), 4);
    }

    #[test]
    fn power_series_first_term() {
        let spec = PowerSeriesSpec::builtin(Variant::Zeta3, 2).unwrap();
        assert_eq!(*power_series_eval(&spec, 1).unwrap().value(), rat(1053, 730));
        assert!(PowerSeriesSpec::builtin(Variant::Zeta3, 6).is_err());
        assert!(PowerSeriesSpec::builtin(Variant::Zeta2, 4).is_err());
    }

    #[test]
    fn pair_polynomial_degrees() {
        for (variant, ms, e) in [(Variant::Zeta3, 2..=5, 3), (Variant::Zeta2, 2..=3, 2)] {
            for m in ms {
                let spec = PowerSeriesSpec::builtin(variant, m).unwrap();
                for (i, (first, second)) in spec.pairs.iter().enumerate() {
                    let i = i + 2;
                    assert_eq!(first.degree(), Some(e * (i - 1)));
                    assert_eq!(second.degree(), Some(e * (i - 2)));
                }
            }
        }
    }

    #[test]
    fn telescoping_examples() {
        let pair = NamedPair::get(PairName::Apery3);
        let (a, _) = pair.solutions(3).unwrap();
        let s = generic_limit_series(&a, &pair.b_initial[0], &pair.b_initial[1], 3).unwrap();
        assert_eq!(s.partial_sum, rat(62531, 52020));

        let pair = NamedPair::get(PairName::Fib);
        let (a, _) = pair.solutions(20).unwrap();
        let s = generic_limit_series(&a, &pair.b_initial[0], &pair.b_initial[1], 10).unwrap();
        assert_eq!(s.partial_sum, rat(89, 55));
        assert_eq!(s.first_index, 1);
        assert!(s.tail_radius.is_some());
    }
}
