//! Independent high-precision values of ζ(2), ζ(3) and π, used as oracles
//! for every Apéry-type series.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bounded::BoundedValue;
use crate::rational::{big, binomial, int, pow10, ten_to_minus, Rational};
use crate::series::SeriesError;

/// Cut-off for the direct part of the Euler–Maclaurin sum.
const EM_CUTOFF: u64 = 2000;
const MAX_DIGITS: u32 = 60;
const GUARD_DIGITS: u32 = 10;

/// `B_0..=B_{n}` from `Σ_{k≤m} C(m+1,k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let s: Rational = (0..m).map(|k| big(binomial(m as u64 + 1, k as u64)) * &b[k]).sum();
        b.push(-s / int(m as i64 + 1));
    }
    b
}

/// ζ(s) for `s ∈ {2, 3}` by direct summation to 1999 in fixed point plus an
/// exact Euler–Maclaurin tail. The radius covers both the truncation of the
/// fixed-point terms and the first omitted correction term (doubled).
pub fn reference_zeta(s: u32, digits: u32) -> Result<BoundedValue, SeriesError> {
    if !(s == 2 || s == 3) || digits > MAX_DIGITS {
        return Err(SeriesError::PrecisionUnreachable { s, digits });
    }
    let scale = pow10(digits + GUARD_DIGITS);
    let mut fixed = BigInt::zero();
    for k in 1..EM_CUTOFF {
        fixed += &scale / BigInt::from(k).pow(s);
    }
    let direct = big(fixed) / big(scale.clone());
    let direct_radius = int(EM_CUTOFF as i64) / big(scale);

    let n = int(EM_CUTOFF as i64);
    let n_pow = |e: i64| -> Rational {
        if e >= 0 {
            num_traits::pow(n.clone(), e as usize)
        } else {
            num_traits::pow(n.clone(), (-e) as usize).recip()
        }
    };
    let si = s as i64;
    let mut tail = n_pow(1 - si) / int(si - 1) + n_pow(-si) / int(2);
    let target = ten_to_minus(digits + GUARD_DIGITS);
    let bern = bernoulli_numbers(2 * 40 + 2);
    // T_j = B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let correction = |j: usize| -> Rational {
        let mut rising = Rational::one();
        for t in 0..(2 * j - 1) as i64 {
            rising *= int(si + t);
        }
        let mut fact = Rational::one();
        for t in 1..=(2 * j) as i64 {
            fact *= int(t);
        }
        &bern[2 * j] / fact * rising * n_pow(-si - 2 * j as i64 + 1)
    };
    let mut j = 1;
    let em_radius = loop {
        if j > 40 {
            return Err(SeriesError::PrecisionUnreachable { s, digits });
        }
        let next = correction(j + 1).abs() * int(2);
        tail += correction(j);
        if next < target {
            break next;
        }
        j += 1;
    };
    Ok(BoundedValue::new(direct + tail, direct_radius + em_radius, digits))
}

/// `arctan(1/x)` scaled by `scale`, each term floored; returns the value and
/// the number of terms (each contributing at most one unit of error).
fn arctan_inv_fixed(x: u64, scale: &BigInt) -> (BigInt, u64) {
    let x2 = BigInt::from(x * x);
    let mut power = BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = scale / (&power * (2 * k + 1));
        if term.is_zero() {
            return (sum, k + 1);
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
        k += 1;
    }
}

/// π by Machin's formula `16 arctan(1/5) − 4 arctan(1/239)` in fixed point.
pub fn reference_pi(digits: u32) -> BoundedValue {
    let scale = pow10(digits + GUARD_DIGITS);
    let (a5, k5) = arctan_inv_fixed(5, &scale);
    let (a239, k239) = arctan_inv_fixed(239, &scale);
    let value = big(a5 * 16 - a239 * 4) / big(scale.clone());
    // one unit per floored term plus one for the alternating tail, per arctan
    let radius = int((16 * (k5 + 1) + 4 * (k239 + 1)) as i64) / big(scale);
    BoundedValue::new(value, radius, digits)
}

/// Number of correct decimal places of `approx` against `reference`: the
/// largest `d ≤ reference.digits` with `|Δ| + reference.radius < ½·10^{−d}`.
pub fn correct_digits(approx: &BoundedValue, reference: &BoundedValue) -> Result<u32, SeriesError> {
    let identical = approx.value() == reference.value() && approx.radius() == reference.radius();
    if !identical && !approx.radius().is_zero() && reference.radius() * int(10) > *approx.radius() {
        return Err(SeriesError::ReferenceTooCoarse);
    }
    let err = (approx.value() - reference.value()).abs() + reference.radius();
    let half = Rational::new(1.into(), 2.into());
    let mut d = 0;
    while d < reference.digits() && err < &half * ten_to_minus(d + 1) {
        d += 1;
    }
    if err >= half {
        return Ok(0);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
        assert_eq!(b[3], int(0));
    }

    #[test]
    fn zeta_values() {
        let z2 = reference_zeta(2, 15).unwrap();
        assert_eq!(z2.value_decimal(), "1.644934066848226");
        assert!(*z2.radius() < ten_to_minus(15));
        let z3 = reference_zeta(3, 20).unwrap();
        assert_eq!(z3.value_decimal(), "1.20205690315959428540");
        assert_eq!(reference_zeta(3, 1).unwrap().value_decimal(), "1.2");
        assert!(reference_zeta(3, 61).is_err());
        assert!(reference_zeta(4, 10).is_err());
    }

    #[test]
    fn zeta2_matches_pi_squared_over_six() {
        let z2 = reference_zeta(2, 50).unwrap();
        let pi = reference_pi(55);
        let pi2_6 = pi.pow(2).scale(&rat(1, 6));
        assert!(z2.overlaps(&pi2_6));
        assert!(z2.max_distance(&pi2_6) < ten_to_minus(49));
    }

    #[test]
    fn pi_digits() {
        let pi = reference_pi(30);
        assert_eq!(pi.value_decimal(), "3.141592653589793238462643383280");
        assert!(*pi.radius() < ten_to_minus(30));
    }

    #[test]
    fn digit_counting() {
        let r = reference_zeta(3, 40).unwrap();
        assert_eq!(correct_digits(&r, &r).unwrap(), 40);
        let approx = BoundedValue::new(rat(6, 5), rat(1, 100), 3);
        assert_eq!(correct_digits(&approx, &r).unwrap(), 2);
        let approx = BoundedValue::new(rat(1202, 1000), rat(1, 1000), 3);
        assert_eq!(correct_digits(&approx, &r).unwrap(), 3);
        let coarse = BoundedValue::new(rat(1202, 1000), rat(1, 1000), 3);
        let tight = BoundedValue::new(rat(1202, 1000), rat(1, 100000), 3);
        assert!(matches!(correct_digits(&tight, &coarse), Err(SeriesError::ReferenceTooCoarse)));
    }
}
