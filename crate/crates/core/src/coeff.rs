//! Recurrence coefficients as exact rational functions of the index.
//!
//! A [`CoeffExpr`] is `f(n) + (-1)^n g(n)` with `f`, `g` ratios of integer
//! polynomials. A single sign-flipped rational function (the usual shape of
//! a coefficient like `(-1)^n (n+1)^2`) has `f = 0`; the second slot only
//! fills up when coefficients of different parity are added, which happens
//! inside the lift formulas when just one of `c_n`, `b_n` alternates.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::poly::{ParsePolyError, Poly};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("coefficient has a pole at n = {0}")]
    Pole(i64),
    #[error("division by an identically zero coefficient")]
    DivisionByZero,
    #[error("division by a coefficient that mixes (-1)^n and plain parts")]
    MixedDivisor,
    #[error(transparent)]
    Parse(#[from] ParsePolyError),
    #[error("cannot parse coefficient {0:?}")]
    Syntax(String),
}

/// `num / den` in lowest terms over ℤ[n]: polynomial gcd removed, integer
/// content shared by both sides removed, denominator leading coefficient > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        Self::poly(Poly::zero())
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        } else {
            (num, den)
        };
        let content = num.content().gcd(&den.content());
        if !content.is_one() {
            num = num.div_scalar_exact(&content);
            den = den.div_scalar_exact(&content);
        }
        if den.leading().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, n: i64) -> Result<Rational, CoeffError> {
        let d = self.den.eval(n);
        if d.is_zero() {
            return Err(CoeffError::Pole(n));
        }
        Ok(Rational::new(self.num.eval(n), d))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(&self.num + &o.num, self.den.clone());
        }
        Self::normalized(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -self.num.clone(), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self, CoeffError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn shift(&self, k: i64) -> Self {
        RationalFunction { num: self.num.shift(k), den: self.den.shift(k) }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::normalized(self.num.scale(k.numer()), self.den.scale(k.denom()))
    }

    /// The polynomial itself when the denominator is constant ±1.
    pub fn as_poly(&self) -> Option<&Poly> {
        match self.den.constant_term() {
            Some(d) if d.is_one() => Some(&self.num),
            _ => None,
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

/// An exact coefficient `plain(n) + (-1)^n · alternating(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffExpr {
    plain: RationalFunction,
    alternating: RationalFunction,
}

impl CoeffExpr {
    /// `num/den`, times `(-1)^n` when `sign_flip` is set.
    pub fn new(num: Poly, den: Poly, sign_flip: bool) -> Result<Self, CoeffError> {
        let r = RationalFunction::new(num, den)?;
        Ok(Self::from_parts(r, sign_flip))
    }

    fn from_parts(r: RationalFunction, sign_flip: bool) -> Self {
        if sign_flip {
            CoeffExpr { plain: RationalFunction::zero(), alternating: r }
        } else {
            CoeffExpr { plain: r, alternating: RationalFunction::zero() }
        }
    }

    pub fn poly(p: Poly) -> Self {
        Self::from_parts(RationalFunction::poly(p), false)
    }

    /// `(-1)^n · p(n)`.
    pub fn alternating_poly(p: Poly) -> Self {
        Self::from_parts(RationalFunction::poly(p), true)
    }

    pub fn constant(c: i64) -> Self {
        Self::poly(Poly::from_coeffs(&[c]))
    }

    pub fn zero() -> Self {
        Self::poly(Poly::zero())
    }

    pub fn plain_part(&self) -> &RationalFunction {
        &self.plain
    }

    pub fn alternating_part(&self) -> &RationalFunction {
        &self.alternating
    }

    pub fn is_zero(&self) -> bool {
        self.plain.is_zero() && self.alternating.is_zero()
    }

    /// `(rational function, sign_flip)` when only one part is present.
    pub fn as_single(&self) -> Option<(&RationalFunction, bool)> {
        match (self.plain.is_zero(), self.alternating.is_zero()) {
            (_, true) => Some((&self.plain, false)),
            (true, false) => Some((&self.alternating, true)),
            (false, false) => None,
        }
    }

    pub fn eval(&self, n: i64) -> Result<Rational, CoeffError> {
        let mut v = if self.plain.is_zero() { Rational::zero() } else { self.plain.eval(n)? };
        if !self.alternating.is_zero() {
            let a = self.alternating.eval(n)?;
            if n.is_even() {
                v += a;
            } else {
                v -= a;
            }
        }
        Ok(v)
    }

    pub fn add(&self, o: &Self) -> Self {
        CoeffExpr {
            plain: self.plain.add(&o.plain),
            alternating: self.alternating.add(&o.alternating),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CoeffExpr { plain: self.plain.neg(), alternating: self.alternating.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        // (f + s g)(h + s k) = (fh + gk) + s (fk + gh), since s^2 = 1.
        CoeffExpr {
            plain: self.plain.mul(&o.plain).add(&self.alternating.mul(&o.alternating)),
            alternating: self.plain.mul(&o.alternating).add(&self.alternating.mul(&o.plain)),
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, CoeffError> {
        let (r, flip) = o.as_single().ok_or(CoeffError::MixedDivisor)?;
        if r.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(self.mul(&Self::from_parts(r.recip()?, flip)))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = CoeffExpr::constant(1);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CoeffExpr { plain: self.plain.scale(k), alternating: self.alternating.scale(k) }
    }

    /// The coefficient with `n` replaced by `n + k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut alternating = self.alternating.shift(k);
        if k.is_odd() {
            alternating = alternating.neg();
        }
        CoeffExpr { plain: self.plain.shift(k), alternating }
    }

    /// First index in `lo..=hi` where the coefficient vanishes or has a pole.
    pub fn first_zero_in(&self, lo: i64, hi: i64) -> Option<i64> {
        (lo..=hi).find(|&n| self.eval(n).map_or(true, |v| v.is_zero()))
    }
}

impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alt = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            match self.alternating.as_poly() {
                Some(p) if p.leading().is_one() && p.degree() == Some(0) => write!(f, "(-1)^n"),
                Some(p) if p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 => write!(f, "(-1)^n*{p}"),
                Some(p) => write!(f, "(-1)^n*({p})"),
                None => write!(f, "(-1)^n*{}", self.alternating),
            }
        };
        match (self.plain.is_zero(), self.alternating.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.plain),
            (true, false) => alt(f),
            (false, false) => {
                write!(f, "{} + ", self.plain)?;
                alt(f)
            }
        }
    }
}

impl Serialize for CoeffExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `poly`, `poly/poly`, `(-1)^n*poly`, `(-1)^n*(poly)/(poly)`.
impl FromStr for CoeffExpr {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (flip, rest) = match compact.strip_prefix("(-1)^n") {
            Some(r) => (true, r.strip_prefix('*').unwrap_or(r)),
            None => (false, compact.as_str()),
        };
        if rest.is_empty() {
            return if flip {
                Ok(Self::alternating_poly(Poly::one()))
            } else {
                Err(CoeffError::Syntax(s.to_string()))
            };
        }
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in rest.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(CoeffError::Syntax(s.to_string()));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let (num, den) = match split {
            Some(i) => (rest[..i].parse::<Poly>()?, rest[i + 1..].parse::<Poly>()?),
            None => (rest.parse::<Poly>()?, Poly::one()),
        };
        Self::new(num, den, flip)
    }
}

/// `p(n)` for a polynomial given by ascending integer coefficients.
pub fn poly_coeff(ascending: &[i64]) -> CoeffExpr {
    CoeffExpr::poly(Poly::from_coeffs(ascending))
}
