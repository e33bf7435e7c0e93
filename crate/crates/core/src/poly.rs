//! Integer-coefficient polynomials in the recurrence index `n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Dense polynomial with ascending coefficients and no trailing zeros; the
/// zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Ascending coefficients: `from_coeffs(&[5, 27, 51, 34])` is `34n^3 + 51n^2 + 27n + 5`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `n`.
    pub fn n() -> Self {
        Poly::from_coeffs(&[0, 1])
    }

    /// `a·n + b`
    pub fn linear(a: i64, b: i64) -> Self {
        Poly::from_coeffs(&[b, a])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Option<&BigInt> {
        if self.degree() == Some(0) {
            self.coeffs.first()
        } else {
            None
        }
    }

    pub fn eval(&self, n: i64) -> BigInt {
        self.eval_big(&BigInt::from(n))
    }

    pub fn eval_big(&self, n: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// `p(n + k)`, via Horner composition with `n + k`.
    pub fn shift(&self, k: i64) -> Poly {
        if k == 0 {
            return self.clone();
        }
        let step = Poly::linear(1, k);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &step) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide every coefficient by `d`, which must divide all of them.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c / d).collect())
    }

    fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut p = self.div_scalar_exact(&self.content());
        if p.leading().is_negative() {
            p = -p;
        }
        p
    }

    /// Pseudo-remainder of `self` by `d` (`lc(d)^k · self = q·d + r`).
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let lc = d.leading();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lead = r.leading();
            let mut shifted = vec![BigInt::zero(); rd - dd];
            shifted.extend(d.coeffs.iter().map(|c| c * &lead));
            r = &r.scale(&lc) - &Poly::new(shifted);
        }
        r
    }

    /// Primitive gcd over ℤ[n] (positive leading coefficient).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Exact division in ℤ[n]; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        let lc = d.leading();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (quot, rem) = r.leading().div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            let mut term = vec![BigInt::zero(); rd - dd];
            term.push(quot.clone());
            let term = Poly::new(term);
            r = &r - &(&term * d);
            q[rd - dd] = quot;
        }
        Some(Poly::new(q))
    }

    /// Upper bound for `Σ_{j≥n} 1/p(j)^k` from `p(j) ≥ μ j^d` on `[n, ∞)`,
    /// where `μ` is the leading coefficient minus the negative lower-order
    /// coefficients scaled by `n^{i−d}`. `None` unless `n ≥ 1`, `μ > 0` and
    /// `d·k ≥ 2`.
    pub fn reciprocal_tail_bound(&self, k: u32, n: i64) -> Option<Rational> {
        let d = self.degree()?;
        let dk = d * k as usize;
        if n < 1 || dk < 2 {
            return None;
        }
        let nr = Rational::from_integer(BigInt::from(n));
        let mut mu = Rational::from_integer(self.leading());
        for (i, c) in self.coeffs[..d].iter().enumerate() {
            if c.is_negative() {
                mu -= Rational::from_integer(c.abs()) / num_traits::pow(nr.clone(), d - i);
            }
        }
        if !mu.is_positive() {
            return None;
        }
        let ndk = num_traits::pow(nr.clone(), dk);
        let sum = ndk.recip() + &nr / (&ndk * Rational::from_integer(BigInt::from(dk - 1)));
        Some(sum / num_traits::pow(mu, k as usize))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs.clone())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "n")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial {input:?}: {reason}")]
pub struct ParsePolyError {
    input: String,
    reason: &'static str,
}

/// Accepts integer expressions in `n` built from `+ - * ^`, parentheses and
/// juxtaposition (`34n^3`, `(n+1)^3`, `2(n+1)(17n^2+17n+5)`).
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Poly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser { tokens: &tokens, pos: 0 };
        let err = |reason| ParsePolyError { input: s.to_string(), reason };
        if tokens.is_empty() {
            return Err(err("empty expression"));
        }
        let p = parser.expr().map_err(err)?;
        if parser.pos != tokens.len() {
            return Err(err("trailing characters"));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    tokens: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, &'static str> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op) = self.peek() {
            match op {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, &'static str> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c == '(' || c == 'n' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, &'static str> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.tokens[start..self.pos].iter().collect();
            let exp: u32 = digits.parse().map_err(|_| "bad exponent")?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, &'static str> {
        match self.peek() {
            Some('n') => {
                self.pos += 1;
                Ok(Poly::n())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err("unbalanced parenthesis");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.tokens[start..self.pos].iter().collect();
                let value: BigInt = digits.parse().map_err(|_| "bad integer")?;
                Ok(Poly::constant(value))
            }
            _ => Err("unexpected token"),
        }
    }
}
