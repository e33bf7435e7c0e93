//! Thin helpers around [`BigRational`], the value type of every sequence in
//! the crate.
//!
//! `BigRational` keeps itself in lowest terms with a positive denominator
//! after every operation, so no extra normalization happens here.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `num/den`, reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), exp as usize)
}

/// `10^-exp` as an exact rational.
pub fn ten_to_minus(exp: u32) -> Rational {
    Rational::new(BigInt::one(), pow10(exp))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Round `x` to `digits` places after the decimal point (half away from zero)
/// and render it in plain decimal notation.
pub fn to_decimal(x: &Rational, digits: u32) -> String {
    let scale = pow10(digits);
    let scaled = x.abs() * big(scale.clone());
    let twice: BigInt = scaled.numer() * 2 + scaled.denom();
    let rounded = twice.div_floor(&(scaled.denom() * 2));
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let negative = x.is_negative() && !rounded.is_zero();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        for _ in frac.len()..digits as usize {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

/// Upper bound for `|x|` in scientific notation with three significant
/// digits (`"1.59e-15"`), rounded up so it remains a valid bound.
pub fn to_sci_upper(x: &Rational) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let x = x.abs();
    let mut e = log10_abs(&x).floor() as i64;
    loop {
        let scaled = if e >= 2 {
            &x / big(pow10((e - 2) as u32))
        } else {
            &x * big(pow10((2 - e) as u32))
        };
        let m = scaled.ceil().to_integer();
        if m >= BigInt::from(1000) {
            e += 1;
        } else if m < BigInt::from(100) {
            e -= 1;
        } else {
            let digits = m.to_string();
            return format!("{}.{}e{}", &digits[..1], &digits[1..], e);
        }
    }
}

/// Best-effort `f64` conversion; saturates to ±inf / 0 for values outside the
/// `f64` range instead of failing.
pub fn to_f64(x: &Rational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let l = log10_abs(x);
    let mag = 10f64.powf(l);
    if x.is_negative() {
        -mag
    } else {
        mag
    }
}

/// `log10 |x|`, accurate to roughly double precision even when numerator and
/// denominator have thousands of digits. Returns `-inf` for zero.
pub fn log10_abs(x: &Rational) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    log10_bigint(x.numer()) - log10_bigint(x.denom())
}

pub fn log10_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift as usize).to_f64().unwrap_or(0.0);
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

pub fn sign(x: &Rational) -> i8 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Exact binomial coefficient by the multiplicative formula; every partial
/// quotient is an integer so no rational intermediates appear.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn rational_pow(x: &Rational, exp: u32) -> Rational {
    num_traits::pow(x.clone(), exp as usize)
}

/// Serde helpers: rationals as `{"num": "...", "den": "..."}` decimal strings.
pub mod json {
    use super::Rational;
    use num_bigint::BigInt;
    use serde::ser::{SerializeMap, SerializeSeq};
    use serde::Serializer;

    struct Wrapped<'a>(&'a Rational);

    impl serde::Serialize for Wrapped<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let mut map = s.serialize_map(Some(2))?;
            map.serialize_entry("num", &self.0.numer().to_string())?;
            map.serialize_entry("den", &self.0.denom().to_string())?;
            map.end()
        }
    }

    pub fn rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&Wrapped(x), s)
    }

    pub fn rationals<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&Wrapped(x))?;
        }
        seq.end()
    }

    pub fn opt_rational<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => rational(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal(&rat(6, 5), 3), "1.200");
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&rat(-1, 1000), 2), "0.00");
        assert_eq!(to_decimal(&int(42), 0), "42");
        assert_eq!(to_decimal(&rat(1, 20), 1), "0.1");
    }

    #[test]
    fn scientific_upper_bounds() {
        assert_eq!(to_sci_upper(&rat(1, 3)), "3.34e-1");
        assert_eq!(to_sci_upper(&int(1000)), "1.00e3");
        assert_eq!(to_sci_upper(&rat(-15, 1)), "1.50e1");
        assert_eq!(to_sci_upper(&ten_to_minus(40)), "1.00e-40");
        assert_eq!(to_sci_upper(&int(0)), "0");
    }

    #[test]
    fn log10_of_huge_values() {
        let x = big(pow10(2500)) * rat(3, 1);
        assert!((log10_abs(&x) - (2500.0 + 3f64.log10())).abs() < 1e-9);
        let y = Rational::new(BigInt::one(), pow10(1800));
        assert!((log10_abs(&y) + 1800.0).abs() < 1e-9);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }
}
