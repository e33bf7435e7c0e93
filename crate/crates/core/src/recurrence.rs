//! Linear recurrences with exact coefficients, eager propagation of their
//! solutions, the self-adjoint normal form and the Casoratian.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::coeff::{CoeffError, CoeffExpr};
use crate::poly::Poly;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecurrenceError {
    #[error("leading coefficient vanishes at n = {0}")]
    LeadingCoefficientZero(i64),
    #[error("expected {expected} initial values, got {got}")]
    InsufficientInitialValues { expected: usize, got: usize },
    #[error("coefficient vanishes at n = {0}")]
    DegenerateCoefficient(i64),
    #[error("index {0} is outside the computed range")]
    IndexOutOfRange(i64),
    #[error("recurrence is not a self-adjoint three-term relation")]
    NotThreeTerm,
    #[error("a recurrence needs at least two coefficients")]
    EmptyRecurrence,
    #[error(transparent)]
    Coefficient(#[from] CoeffError),
}

/// A coefficient of a recurrence: either a closed form in `n` or a finite
/// table (what the self-adjoint substitution produces when `p_n/q_n` does not
/// telescope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Expr(CoeffExpr),
    Table { start: i64, values: Vec<Rational> },
}

impl Coefficient {
    pub fn eval(&self, n: i64) -> Result<Rational, RecurrenceError> {
        match self {
            Coefficient::Expr(e) => Ok(e.eval(n)?),
            Coefficient::Table { start, values } => usize::try_from(n - start)
                .ok()
                .and_then(|i| values.get(i))
                .cloned()
                .ok_or(RecurrenceError::IndexOutOfRange(n)),
        }
    }

    /// Coefficient with `n` replaced by `n + k`.
    pub fn shift(&self, k: i64) -> Coefficient {
        match self {
            Coefficient::Expr(e) => Coefficient::Expr(e.shift(k)),
            Coefficient::Table { start, values } => Coefficient::Table { start: start - k, values: values.clone() },
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Expr(e) => Coefficient::Expr(e.neg()),
            Coefficient::Table { start, values } => {
                Coefficient::Table { start: *start, values: values.iter().map(|v| -v).collect() }
            }
        }
    }

    pub fn as_expr(&self) -> Option<&CoeffExpr> {
        match self {
            Coefficient::Expr(e) => Some(e),
            Coefficient::Table { .. } => None,
        }
    }

    /// Index range covered by a table; `None` for closed forms.
    pub fn table_range(&self) -> Option<(i64, i64)> {
        match self {
            Coefficient::Expr(_) => None,
            Coefficient::Table { start, values } => Some((*start, start + values.len() as i64 - 1)),
        }
    }
}

impl From<CoeffExpr> for Coefficient {
    fn from(e: CoeffExpr) -> Self {
        Coefficient::Expr(e)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Expr(e) => write!(f, "{e}"),
            Coefficient::Table { start, values } => {
                write!(f, "table[{}..={}]", start, start + values.len() as i64 - 1)
            }
        }
    }
}

impl Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Σ_i coeffs[i](n) · y[n + lag + order - i] = 0` for every `n ≥ first_index`,
/// coefficients listed from the most advanced term to the most retarded.
///
/// Three-term relations `c_n y_{n+1} - b_n y_n + c_{n-1} y_{n-1} = 0` and the
/// lifted relations built from them use `lag = -1`, so the relation at `n`
/// reaches back to `y[n-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    coeffs: Vec<Coefficient>,
    first_index: i64,
    lag: i64,
}

impl Recurrence {
    pub fn new(coeffs: Vec<Coefficient>, first_index: i64, lag: i64) -> Result<Self, RecurrenceError> {
        if coeffs.len() < 2 {
            return Err(RecurrenceError::EmptyRecurrence);
        }
        Ok(Recurrence { coeffs, first_index, lag })
    }

    /// Self-adjoint form `c_n y_{n+1} + c_{n-1} y_{n-1} - b_n y_n = 0`.
    pub fn three_term(c: impl Into<Coefficient>, b: impl Into<Coefficient>, first_index: i64) -> Self {
        let c = c.into();
        let prev = c.shift(-1);
        Recurrence { coeffs: vec![c, b.into().neg(), prev], first_index, lag: -1 }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn first_index(&self) -> i64 {
        self.first_index
    }

    pub fn lag(&self) -> i64 {
        self.lag
    }

    /// Storage index of the first initial value.
    pub fn base_index(&self) -> i64 {
        self.first_index + self.lag
    }

    /// Storage index touched by coefficient `i` of the relation at `n`.
    pub fn term_index(&self, n: i64, i: usize) -> i64 {
        n + self.lag + (self.order() - i) as i64
    }

    /// `(c, b)` when this is a self-adjoint three-term relation.
    pub fn as_three_term(&self) -> Option<(Coefficient, Coefficient)> {
        if self.order() != 2 || self.lag != -1 || self.coeffs[2] != self.coeffs[0].shift(-1) {
            return None;
        }
        Some((self.coeffs[0].clone(), self.coeffs[1].neg()))
    }

    /// Largest relation index at which every tabulated coefficient is
    /// defined; `None` when all coefficients are closed forms.
    pub fn last_tabulated(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.table_range()).map(|(_, hi)| hi).min()
    }

    pub fn coefficients_at(&self, n: i64) -> Result<Vec<Rational>, RecurrenceError> {
        self.coeffs.iter().map(|c| c.eval(n)).collect()
    }

    /// Residual of the relation at `n` for values given by `y`.
    pub fn residual_with(
        &self,
        n: i64,
        y: impl Fn(i64) -> Option<Rational>,
    ) -> Result<Rational, RecurrenceError> {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = self.term_index(n, i);
            let v = y(j).ok_or(RecurrenceError::IndexOutOfRange(j))?;
            if !v.is_zero() {
                acc += c.eval(n)? * v;
            }
        }
        Ok(acc)
    }
}

/// Exact solution values at storage indices `base_index..`.
#[derive(Clone, Debug)]
pub struct SolutionSeq {
    recurrence: Arc<Recurrence>,
    base_index: i64,
    values: Vec<Rational>,
}

impl SolutionSeq {
    /// Wrap already-computed values; used by the disk cache after it has
    /// re-verified them.
    pub(crate) fn from_parts(recurrence: Arc<Recurrence>, values: Vec<Rational>) -> Self {
        let base_index = recurrence.base_index();
        SolutionSeq { recurrence, base_index, values }
    }

    pub fn recurrence(&self) -> &Arc<Recurrence> {
        &self.recurrence
    }

    pub fn base_index(&self) -> i64 {
        self.base_index
    }

    pub fn last_index(&self) -> i64 {
        self.base_index + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn initial_values(&self) -> &[Rational] {
        &self.values[..self.recurrence.order()]
    }

    pub fn get(&self, n: i64) -> Option<&Rational> {
        usize::try_from(n - self.base_index).ok().and_then(|i| self.values.get(i))
    }

    pub fn at(&self, n: i64) -> Result<&Rational, RecurrenceError> {
        self.get(n).ok_or(RecurrenceError::IndexOutOfRange(n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.values.iter().enumerate().map(move |(i, v)| (self.base_index + i as i64, v))
    }

    /// The same solution restricted to indices `..=n_max`.
    pub fn truncated(&self, n_max: i64) -> SolutionSeq {
        let keep = (n_max - self.base_index + 1).clamp(self.recurrence.order() as i64, self.values.len() as i64);
        SolutionSeq {
            recurrence: Arc::clone(&self.recurrence),
            base_index: self.base_index,
            values: self.values[..keep as usize].to_vec(),
        }
    }

    pub fn residual(&self, n: i64) -> Result<Rational, RecurrenceError> {
        self.recurrence.residual_with(n, |j| self.get(j).cloned())
    }

    /// Relation indices whose terms all lie inside the stored range.
    pub fn relation_range(&self) -> std::ops::RangeInclusive<i64> {
        let rec = &self.recurrence;
        let hi = self.last_index() - rec.lag() - rec.order() as i64;
        rec.first_index()..=rec.last_tabulated().map_or(hi, |t| t.min(hi))
    }

    /// First relation index with a nonzero residual, if any.
    pub fn first_violation(&self) -> Result<Option<i64>, RecurrenceError> {
        for n in self.relation_range() {
            if !self.residual(n)?.is_zero() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

/// Solve the relation forward for its most advanced term, storing every
/// value from the base index through `n_max`.
pub fn propagate(
    rec: &Arc<Recurrence>,
    initial: &[Rational],
    n_max: i64,
) -> Result<SolutionSeq, RecurrenceError> {
    let order = rec.order();
    if initial.len() != order {
        return Err(RecurrenceError::InsufficientInitialValues { expected: order, got: initial.len() });
    }
    let base = rec.base_index();
    let mut values = initial.to_vec();
    let mut n = rec.first_index();
    while rec.term_index(n, 0) <= n_max {
        let lead = rec.coeffs[0].eval(n)?;
        if lead.is_zero() {
            return Err(RecurrenceError::LeadingCoefficientZero(n));
        }
        let mut acc = Rational::zero();
        for i in 1..=order {
            let v = &values[(rec.term_index(n, i) - base) as usize];
            if !v.is_zero() {
                acc += rec.coeffs[i].eval(n)? * v;
            }
        }
        values.push(-acc / lead);
        n += 1;
    }
    Ok(SolutionSeq { recurrence: Arc::clone(rec), base_index: base, values })
}

/// `A_{n-1} B_n - A_n B_{n-1}`.
pub fn casoratian(a: &SolutionSeq, b: &SolutionSeq, n: i64) -> Result<Rational, RecurrenceError> {
    Ok(a.at(n - 1)? * b.at(n)? - a.at(n)? * b.at(n - 1)?)
}

/// `α = c_s (A_s B_{s+1} - A_{s+1} B_s)` at the base index `s`; for a
/// self-adjoint relation `c_{n-1} · casoratian(n) = α` for every `n > s`.
pub fn casoratian_constant(a: &SolutionSeq, b: &SolutionSeq) -> Result<Rational, RecurrenceError> {
    let (c, _) = a.recurrence().as_three_term().ok_or(RecurrenceError::NotThreeTerm)?;
    let s = a.base_index();
    Ok(c.eval(s)? * casoratian(a, b, s + 1)?)
}

/// Bring `p_n y_{n+1} + q_n y_{n-1} = r_n y_n` (asserted for `n ≥ 1`) to the
/// self-adjoint form via `c_n = c_{n-1} p_n / q_n`, `b_n = c_n r_n / p_n`.
///
/// When `q_n = ±p_{n-1}` the product telescopes and `c_n = (±1)^n c_0 p_n / p_0`
/// comes out in closed form; otherwise `c_n`, `b_n` are tabulated for
/// `0 ≤ n ≤ n_max`.
pub fn to_self_adjoint(
    p: &CoeffExpr,
    q: &CoeffExpr,
    r: &CoeffExpr,
    c0: &Rational,
    n_max: i64,
) -> Result<Recurrence, RecurrenceError> {
    if c0.is_zero() {
        return Err(RecurrenceError::DegenerateCoefficient(0));
    }
    for n in 1..=n_max {
        if p.eval(n)?.is_zero() || q.eval(n)?.is_zero() {
            return Err(RecurrenceError::DegenerateCoefficient(n));
        }
    }
    let prev = p.shift(-1);
    let sign = if *q == prev {
        Some(CoeffExpr::constant(1))
    } else if *q == prev.neg() {
        Some(CoeffExpr::alternating_poly(Poly::from_coeffs(&[1])))
    } else {
        None
    };
    if let (Some(sign), Ok(p0)) = (sign, p.eval(0)) {
        if !p0.is_zero() {
            let c = p.mul(&sign).scale(&(c0 / p0));
            let b = c.mul(r).div(p)?;
            return Ok(Recurrence::three_term(c, b, 1));
        }
    }
    let mut c_values = vec![c0.clone()];
    let mut b_values = Vec::new();
    for n in 1..=n_max {
        let pn = p.eval(n)?;
        let cn = &c_values[n as usize - 1] * &pn / q.eval(n)?;
        b_values.push(&cn * r.eval(n)? / pn);
        c_values.push(cn);
    }
    Ok(Recurrence::three_term(
        Coefficient::Table { start: 0, values: c_values },
        Coefficient::Table { start: 1, values: b_values },
        1,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct DisconjugacyRow {
    pub n: i64,
    pub c_sign: i8,
    /// `b_n - c_n - c_{n-1}`
    #[serde(serialize_with = "rational::json::rational")]
    pub excess: Rational,
    /// `(b_n - c_n - c_{n-1}) / c_n`, the largest admissible `ε_n`
    #[serde(serialize_with = "rational::json::opt_rational")]
    pub eps: Option<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DisconjugacyReport {
    pub n_lo: i64,
    pub n_hi: i64,
    pub rows: Vec<DisconjugacyRow>,
    /// `c_n > 0` on the whole range.
    pub c_positive: bool,
    /// `b_n - c_n - c_{n-1} > 0` on the whole range.
    pub excess_positive: bool,
    /// `Σ 1/c_n < ∞`, decided from the degree when `c_n` is a polynomial of
    /// constant sign; `None` when that cannot be decided symbolically.
    pub reciprocal_summable: Option<bool>,
    /// Both sign hypotheses hold on the range (no claim beyond it).
    pub disconjugate_on_range: bool,
}

pub fn disconjugacy_report(rec: &Recurrence, n_lo: i64, n_hi: i64) -> Result<DisconjugacyReport, RecurrenceError> {
    let (c, b) = rec.as_three_term().ok_or(RecurrenceError::NotThreeTerm)?;
    let mut rows = Vec::new();
    for n in n_lo..=n_hi {
        let cn = c.eval(n)?;
        let excess = b.eval(n)? - &cn - c.eval(n - 1)?;
        let eps = if cn.is_zero() { None } else { Some(&excess / &cn) };
        rows.push(DisconjugacyRow { n, c_sign: rational::sign(&cn), excess, eps });
    }
    let c_positive = rows.iter().all(|r| r.c_sign > 0);
    let excess_positive = rows.iter().all(|r| r.excess.is_positive());
    let reciprocal_summable = c
        .as_expr()
        .and_then(|e| e.as_single())
        .and_then(|(f, _)| f.as_poly())
        .and_then(|p| p.degree())
        .map(|d| d >= 2);
    Ok(DisconjugacyReport {
        n_lo,
        n_hi,
        rows,
        c_positive,
        excess_positive,
        reciprocal_summable,
        disconjugate_on_range: c_positive && excess_positive,
    })
}
