//! Symmetric products of two solutions of a three-term recurrence and the
//! higher-order recurrences they satisfy.
//!
//! For solutions `A`, `B` and an order `m`, component `k` at storage index
//! `j` is the sum of the `C(m,k)` products of `A_j, …, A_{j+m-1}` in which
//! exactly `k` factors are replaced by the matching `B`. Lifted relations
//! share the three-term convention (`lag = -1`): the relation at `n`
//! involves storage indices `n-1, …, n+m`, so its trailing term is the
//! product starting at `A_{n-1}`, e.g. `A_n A_{n-1}` for `m = 2`.

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::CoeffExpr;
use crate::linalg;
use crate::poly::Poly;
use crate::rational::{self, int, Rational};
use crate::recurrence::{propagate, Coefficient, Recurrence, RecurrenceError, SolutionSeq};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("lift hypothesis violated at n = {0}")]
    HypothesisViolated(i64),
    #[error("symmetric components are linearly dependent near n = {0}")]
    DependentBasis(i64),
    #[error("index {0} is outside the computed range")]
    IndexOutOfRange(i64),
    #[error("lift order must be at least 2, got {0}")]
    BadOrder(usize),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

impl From<crate::coeff::CoeffError> for LiftError {
    fn from(e: crate::coeff::CoeffError) -> Self {
        LiftError::Recurrence(e.into())
    }
}

/// Arithmetic shared by the symbolic (`CoeffExpr`) and per-index (`Rational`)
/// evaluation of the lift formulas, so each formula is written once.
pub trait LiftRing: Clone {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, e: u32) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl LiftRing for CoeffExpr {
    fn add(&self, o: &Self) -> Self {
        CoeffExpr::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CoeffExpr::mul(self, o)
    }
    fn neg(&self) -> Self {
        CoeffExpr::neg(self)
    }
    fn pow(&self, e: u32) -> Self {
        CoeffExpr::pow(self, e)
    }
}

impl LiftRing for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        rational::rational_pow(self, e)
    }
}

/// `±Π factor^exp`.
fn mono<T: LiftRing>(positive: bool, factors: &[(&T, u32)]) -> T {
    let mut it = factors.iter();
    let (first, e) = it.next().expect("nonempty monomial");
    let mut acc = first.pow(*e);
    for (f, e) in it {
        acc = acc.mul(&f.pow(*e));
    }
    if positive {
        acc
    } else {
        acc.neg()
    }
}

fn sum<T: LiftRing>(terms: Vec<T>) -> T {
    let mut it = terms.into_iter();
    let first = it.next().expect("nonempty sum");
    it.fold(first, |acc, t| acc.add(&t))
}

/// Four-term relation for `m = 2`, coefficients most advanced first.
/// `c(k)`, `b(k)` give the base coefficients at offset `k` from `n`.
pub fn four_term_formula<T: LiftRing>(c: impl Fn(i64) -> T, b: impl Fn(i64) -> T) -> [T; 4] {
    let (cm, c0, c1, c2) = (c(-1), c(0), c(1), c(2));
    let (b0, b1, b2) = (b(0), b(1), b(2));
    [
        mono(true, &[(&c2, 1), (&c1, 2), (&b0, 1)]),
        mono(true, &[(&b0, 1), (&c1, 3)]).add(&mono(false, &[(&b0, 1), (&b1, 1), (&b2, 1), (&c1, 1)])),
        mono(true, &[(&b0, 1), (&b1, 1), (&b2, 1), (&c0, 1)]).add(&mono(false, &[(&b2, 1), (&c0, 3)])),
        mono(false, &[(&cm, 1), (&c0, 2), (&b2, 1)]),
    ]
}

/// Five-term relation for `m = 3` as the vector `(p, -q, -r, -s, -t)`.
pub fn five_term_formula<T: LiftRing>(c: impl Fn(i64) -> T, b: impl Fn(i64) -> T) -> [T; 5] {
    let (cm, c0, c1, c2, c3, c4) = (c(-1), c(0), c(1), c(2), c(3), c(4));
    let (b0, b1, b2, b3, b4) = (b(0), b(1), b(2), b(3), b(4));
    let p = mono(true, &[(&c4, 1), (&c3, 2), (&c2, 3), (&b1, 1)])
        .mul(&c0.pow(2).sub(&b1.mul(&b0)));
    let q = sum(vec![
        mono(false, &[(&b2, 1), (&b1, 1), (&c3, 3), (&c2, 2), (&c0, 2)]),
        mono(true, &[(&b1, 2), (&c3, 1), (&c2, 4), (&b4, 1), (&b0, 1)]),
        mono(false, &[(&b2, 1), (&b1, 2), (&b3, 1), (&c3, 1), (&c2, 2), (&b4, 1), (&b0, 1)]),
        mono(true, &[(&b2, 1), (&b1, 1), (&b3, 1), (&c3, 1), (&c2, 2), (&b4, 1), (&c0, 2)]),
        mono(false, &[(&b1, 1), (&c3, 1), (&c2, 4), (&b4, 1), (&c0, 2)]),
        mono(true, &[(&b2, 1), (&b1, 2), (&c3, 3), (&c2, 2), (&b0, 1)]),
    ]);
    let r = sum(vec![
        mono(false, &[(&b2, 1), (&b1, 1), (&b3, 2), (&c2, 1), (&c1, 1), (&b4, 1), (&c0, 2)]),
        mono(false, &[(&b1, 2), (&c2, 3), (&c1, 1), (&b4, 1), (&b0, 1), (&b3, 1)]),
        mono(true, &[(&b1, 1), (&b3, 1), (&c2, 1), (&c1, 3), (&c3, 2), (&b0, 1)]),
        mono(true, &[(&b2, 1), (&b1, 1), (&b3, 1), (&c2, 1), (&c1, 1), (&c3, 2), (&c0, 2)]),
        mono(false, &[(&b1, 1), (&c2, 1), (&c1, 3), (&b4, 1), (&b0, 1), (&b3, 2)]),
        mono(true, &[(&b1, 2), (&c2, 3), (&c1, 1), (&c3, 2), (&b0, 1)]),
        mono(true, &[(&b1, 1), (&b3, 1), (&c2, 3), (&c1, 1), (&b4, 1), (&c0, 2)]),
        mono(true, &[(&b3, 2), (&c2, 1), (&c1, 3), (&b4, 1), (&c0, 2)]),
        mono(false, &[(&b1, 1), (&c2, 3), (&c1, 1), (&c3, 2), (&c0, 2)]),
        mono(false, &[(&b2, 1), (&b1, 2), (&b3, 1), (&c2, 1), (&c1, 1), (&c3, 2), (&b0, 1)]),
        mono(true, &[(&b2, 1), (&b1, 2), (&c2, 1), (&c1, 1), (&b4, 1), (&b0, 1), (&b3, 2)]),
        mono(false, &[(&b3, 1), (&c2, 1), (&c1, 3), (&c3, 2), (&c0, 2)]),
    ]);
    let s = sum(vec![
        mono(false, &[(&b3, 1), (&c1, 4), (&c0, 1), (&c3, 2), (&b0, 1)]),
        mono(true, &[(&b2, 1), (&c1, 2), (&c0, 3), (&b4, 1), (&b3, 2)]),
        mono(true, &[(&b3, 2), (&c1, 4), (&c0, 1), (&b4, 1), (&b0, 1)]),
        mono(true, &[(&b2, 1), (&b1, 1), (&b3, 1), (&c1, 2), (&c0, 1), (&c3, 2), (&b0, 1)]),
        mono(false, &[(&b2, 1), (&b1, 1), (&b3, 2), (&c1, 2), (&c0, 1), (&b4, 1), (&b0, 1)]),
        mono(false, &[(&b2, 1), (&c1, 2), (&c0, 3), (&c3, 2), (&b3, 1)]),
    ]);
    let t = mono(true, &[(&b3, 2), (&b4, 1), (&c1, 3), (&c0, 2), (&cm, 1)])
        .sub(&mono(true, &[(&b3, 1), (&c3, 2), (&c1, 3), (&c0, 2), (&cm, 1)]));
    [p, q.neg(), r.neg(), s.neg(), t.neg()]
}

/// How the per-index scalar freedom of a lifted coefficient vector is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Coefficients are the closed-form polynomial expressions themselves.
    ClosedForm,
    /// Scaled so the trailing coefficient equals the closed form's.
    TrailingMatchesClosedForm,
    /// Scaled so the first nonzero coefficient is 1.
    LeadingOne,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftedRecurrence {
    pub m: usize,
    #[serde(skip)]
    pub base: Arc<Recurrence>,
    pub relation: Arc<Recurrence>,
    pub normalization: Normalization,
}

impl LiftedRecurrence {
    pub fn coefficients_at(&self, n: i64) -> Result<Vec<Rational>, RecurrenceError> {
        self.relation.coefficients_at(n)
    }
}

fn base_coefficients(base: &Recurrence) -> Result<(Coefficient, Coefficient), LiftError> {
    base.as_three_term().ok_or(LiftError::Recurrence(RecurrenceError::NotThreeTerm))
}

/// Evaluate `c` on `n-1..=n+reach` and `b` on `n..=n+reach`, reporting the
/// first index where either vanishes when `nonzero` is set.
fn check_window(c: &Coefficient, b: &Coefficient, n: i64, reach: i64, nonzero: bool) -> Result<(), LiftError> {
    for k in -1..=reach {
        let cv = c.eval(n + k)?;
        if nonzero && cv.is_zero() {
            return Err(LiftError::HypothesisViolated(n + k));
        }
        if k >= 0 {
            let bv = b.eval(n + k)?;
            if nonzero && bv.is_zero() {
                return Err(LiftError::HypothesisViolated(n + k));
            }
        }
    }
    Ok(())
}

/// Closed-form coefficients when both base coefficients are closed forms,
/// otherwise a per-index table over `first_index..=n_max`.
fn build_lift<const K: usize>(
    base: &Arc<Recurrence>,
    m: usize,
    n_max: i64,
    symbolic: impl Fn(&CoeffExpr, &CoeffExpr) -> [CoeffExpr; K],
    numeric: impl Fn(&Coefficient, &Coefficient, i64) -> Result<[Rational; K], RecurrenceError>,
) -> Result<LiftedRecurrence, LiftError> {
    let (c, b) = base_coefficients(base)?;
    let first = base.first_index();
    let coeffs: Vec<Coefficient> = match (c.as_expr(), b.as_expr()) {
        (Some(ce), Some(be)) => symbolic(ce, be).into_iter().map(Coefficient::Expr).collect(),
        _ => {
            let mut cols: Vec<Vec<Rational>> = vec![Vec::new(); K];
            for n in first..=n_max {
                for (col, v) in cols.iter_mut().zip(numeric(&c, &b, n)?) {
                    col.push(v);
                }
            }
            cols.into_iter().map(|values| Coefficient::Table { start: first, values }).collect()
        }
    };
    let relation = Recurrence::new(coeffs, first, -1)?;
    Ok(LiftedRecurrence {
        m,
        base: Arc::clone(base),
        relation: Arc::new(relation),
        normalization: Normalization::ClosedForm,
    })
}

fn eval_at(c: &Coefficient, n: i64) -> impl Fn(i64) -> Rational + '_ {
    move |k| c.eval(n + k).expect("coefficient range checked")
}

/// Four-term relation satisfied by the three `m = 2` symmetric components.
/// Requires `c_n ≠ 0` and `b_n ≠ 0` at every index the relations up to
/// `n_max` touch.
pub fn lift_m2(base: &Arc<Recurrence>, n_max: i64) -> Result<LiftedRecurrence, LiftError> {
    let (c, b) = base_coefficients(base)?;
    for n in base.first_index()..=n_max {
        check_window(&c, &b, n, 2, true)?;
    }
    build_lift(
        base,
        2,
        n_max,
        |c, b| four_term_formula(|k| c.shift(k), |k| b.shift(k)),
        |c, b, n| Ok(four_term_formula(eval_at(c, n), eval_at(b, n))),
    )
}

/// Five-term relation satisfied by the four `m = 3` symmetric components.
/// Requires the leading coefficient to be nonzero for every relation index
/// up to `n_max`.
pub fn lift_m3(base: &Arc<Recurrence>, n_max: i64) -> Result<LiftedRecurrence, LiftError> {
    let (c, b) = base_coefficients(base)?;
    for n in base.first_index()..=n_max {
        check_window(&c, &b, n, 4, false)?;
        let [p, ..] = five_term_formula(eval_at(&c, n), eval_at(&b, n));
        if p.is_zero() {
            return Err(LiftError::HypothesisViolated(n));
        }
    }
    build_lift(
        base,
        3,
        n_max,
        |c, b| five_term_formula(|k| c.shift(k), |k| b.shift(k)),
        |c, b, n| Ok(five_term_formula(eval_at(c, n), eval_at(b, n))),
    )
}

/// Value of component `k` of the order-`m` symmetric product at storage
/// index `j` (factors `j, …, j+m-1`).
pub fn symmetric_component(a: &SolutionSeq, b: &SolutionSeq, m: usize, k: usize, j: i64) -> Result<Rational, LiftError> {
    if k > m {
        return Err(LiftError::BadOrder(k));
    }
    Ok(all_components(a, b, m, j)?.swap_remove(k))
}

/// All `m+1` components at `j`: coefficients of `x^k` in `Π_t (A_{j+t} + x B_{j+t})`.
fn all_components(a: &SolutionSeq, b: &SolutionSeq, m: usize, j: i64) -> Result<Vec<Rational>, LiftError> {
    let mut poly = vec![Rational::one()];
    for t in 0..m as i64 {
        let av = a.get(j + t).ok_or(LiftError::IndexOutOfRange(j + t))?;
        let bv = b.get(j + t).ok_or(LiftError::IndexOutOfRange(j + t))?;
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (i, p) in poly.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            next[i] += p * av;
            next[i + 1] += p * bv;
        }
        poly = next;
    }
    Ok(poly)
}

/// The `m+1` symmetric components of a solution pair, materialized over
/// every storage index where all factors are available.
#[derive(Clone, Debug)]
pub struct LiftedBasis {
    pub m: usize,
    pub base_index: i64,
    /// `components[k][j - base_index]`; `k` counts the `B` factors.
    pub components: Vec<Vec<Rational>>,
}

impl LiftedBasis {
    pub fn new(a: &SolutionSeq, b: &SolutionSeq, m: usize) -> Result<Self, LiftError> {
        if m < 1 {
            return Err(LiftError::BadOrder(m));
        }
        let lo = a.base_index().max(b.base_index());
        let hi = a.last_index().min(b.last_index()) - m as i64 + 1;
        let rows: Vec<Vec<Rational>> =
            (lo..=hi).into_par_iter().map(|j| all_components(a, b, m, j)).collect::<Result<_, _>>()?;
        let mut components = vec![Vec::with_capacity(rows.len()); m + 1];
        for row in rows {
            for (k, v) in row.into_iter().enumerate() {
                components[k].push(v);
            }
        }
        Ok(LiftedBasis { m, base_index: lo, components })
    }

    pub fn last_index(&self) -> i64 {
        self.base_index + self.components[0].len() as i64 - 1
    }

    pub fn get(&self, k: usize, j: i64) -> Option<&Rational> {
        usize::try_from(j - self.base_index).ok().and_then(|i| self.components.get(k)?.get(i))
    }

    /// Relation indices of `rec` whose windows fit inside the basis.
    pub fn relation_range(&self, rec: &Recurrence) -> std::ops::RangeInclusive<i64> {
        let lo = rec.first_index().max(self.base_index - rec.lag());
        let hi = self.last_index() - rec.lag() - rec.order() as i64;
        lo..=rec.last_tabulated().map_or(hi, |t| t.min(hi))
    }

    pub fn residual(&self, rec: &Recurrence, k: usize, n: i64) -> Result<Rational, LiftError> {
        Ok(rec.residual_with(n, |j| self.get(k, j).cloned())?)
    }

    /// First `(component, n)` with a nonzero residual over the relation range.
    pub fn first_violation(&self, rec: &Recurrence) -> Result<Option<(usize, i64)>, LiftError> {
        let range = self.relation_range(rec);
        let hits: Vec<Option<(usize, i64)>> = range
            .clone()
            .into_par_iter()
            .map(|n| -> Result<Option<(usize, i64)>, LiftError> {
                for k in 0..=self.m {
                    if !self.residual(rec, k, n)?.is_zero() {
                        return Ok(Some((k, n)));
                    }
                }
                Ok(None)
            })
            .collect::<Result<_, _>>()?;
        Ok(hits.into_iter().flatten().min_by_key(|&(_, n)| n))
    }
}

/// Per-index coefficient vectors from the vanishing of the
/// `(m+2) × (m+2)` determinant whose rows are the `m+1` components and a
/// generic solution, over the window `n-1..n+m`.
#[derive(Clone, Debug)]
pub struct GeneralLift {
    pub m: usize,
    base: Arc<Recurrence>,
    basis: LiftedBasis,
}

impl GeneralLift {
    /// Propagates the canonical basis `(1,0)`, `(0,1)` of `base` far enough
    /// for relation indices up to `n_max`.
    pub fn new(base: &Arc<Recurrence>, m: usize, n_max: i64) -> Result<Self, LiftError> {
        if m < 2 {
            return Err(LiftError::BadOrder(m));
        }
        let reach = n_max + 2 * m as i64 + 1;
        let a = propagate(base, &[int(1), int(0)], reach)?;
        let b = propagate(base, &[int(0), int(1)], reach)?;
        let basis = LiftedBasis::new(&a, &b, m)?;
        Ok(GeneralLift { m, base: Arc::clone(base), basis })
    }

    /// Raw cofactor vector at `n`, most advanced coefficient first.
    pub fn cofactors(&self, n: i64) -> Result<Vec<Rational>, LiftError> {
        let top = n + self.m as i64;
        if n - 1 < self.basis.base_index || top > self.basis.last_index() {
            return Err(LiftError::IndexOutOfRange(n));
        }
        let matrix: Vec<Vec<Rational>> = (0..=self.m)
            .map(|k| (0..=self.m + 1).map(|i| self.basis.get(k, top - i as i64).unwrap().clone()).collect())
            .collect();
        let v = linalg::kernel_by_cofactors(&matrix);
        if v[0].is_zero() {
            return Err(LiftError::DependentBasis(n));
        }
        Ok(v)
    }

    /// Closed-form trailing coefficient for `m = 2, 3` when the base has
    /// computable coefficients at `n`.
    fn closed_trailing(&self, n: i64) -> Option<Rational> {
        let (c, b) = self.base.as_three_term()?;
        let ok = (-1..=4).all(|k| c.eval(n + k).is_ok() && b.eval(n + k).is_ok());
        if !ok {
            return None;
        }
        let c = |k: i64| c.eval(n + k).unwrap();
        let b = |k: i64| b.eval(n + k).unwrap();
        match self.m {
            2 => Some(four_term_formula(c, b)[3].clone()),
            3 => Some(five_term_formula(c, b)[4].clone()),
            _ => None,
        }
    }

    /// Normalized coefficient vector at `n`.
    pub fn coefficients(&self, n: i64) -> Result<(Vec<Rational>, Normalization), LiftError> {
        let v = self.cofactors(n)?;
        let trailing = v.last().unwrap();
        if let Some(target) = self.closed_trailing(n) {
            if !target.is_zero() && !trailing.is_zero() {
                let f = target / trailing;
                return Ok((v.iter().map(|x| x * &f).collect(), Normalization::TrailingMatchesClosedForm));
            }
        }
        let lead = v.iter().find(|x| !x.is_zero()).unwrap().clone();
        Ok((v.iter().map(|x| x / &lead).collect(), Normalization::LeadingOne))
    }

    /// Tabulate relation indices `lo..=hi` into a lifted recurrence.
    pub fn tabulate(&self, lo: i64, hi: i64) -> Result<LiftedRecurrence, LiftError> {
        let rows: Vec<(Vec<Rational>, Normalization)> =
            (lo..=hi).into_par_iter().map(|n| self.coefficients(n)).collect::<Result<_, _>>()?;
        let normalization = if rows.iter().all(|(_, k)| *k == Normalization::TrailingMatchesClosedForm) {
            Normalization::TrailingMatchesClosedForm
        } else {
            Normalization::LeadingOne
        };
        let mut cols = vec![Vec::with_capacity(rows.len()); self.m + 2];
        for (row, _) in rows {
            for (col, v) in cols.iter_mut().zip(row) {
                col.push(v);
            }
        }
        let coeffs = cols.into_iter().map(|values| Coefficient::Table { start: lo, values }).collect();
        Ok(LiftedRecurrence {
            m: self.m,
            base: Arc::clone(&self.base),
            relation: Arc::new(Recurrence::new(coeffs, lo, -1)?),
            normalization,
        })
    }
}

/// Coefficient vector of the order-`m` lift at relation index `n`.
pub fn lift_general(base: &Arc<Recurrence>, m: usize, n: i64) -> Result<Vec<Rational>, LiftError> {
    Ok(GeneralLift::new(base, m, n)?.coefficients(n)?.0)
}

/// `u · v` exactly proportional (cross-multiplication, no division).
pub fn proportional(u: &[Rational], v: &[Rational]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let Some(p) = (0..u.len()).find(|&i| !u[i].is_zero() || !v[i].is_zero()) else {
        return true;
    };
    (0..u.len()).all(|i| &u[i] * &v[p] == &v[i] * &u[p])
}

/// 3×3 determinant of the `m = 2` basis on rows `n, n+1, n+2`, columns
/// pure-A, pure-B, mixed.
pub fn lifted_wronskian(basis: &LiftedBasis, n: i64) -> Result<Rational, LiftError> {
    if basis.m != 2 {
        return Err(LiftError::BadOrder(basis.m));
    }
    let rows = (n..n + 3)
        .map(|j| {
            [0usize, 2, 1]
                .iter()
                .map(|&k| basis.get(k, j).cloned().ok_or(LiftError::IndexOutOfRange(j)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(linalg::det(rows))
}

/// Closed form of [`lifted_wronskian`]:
/// `b_{n+2} b_{n+1} c_{n-1}^3 (A_n B_{n-1} − B_n A_{n-1})^3 / (c_n c_{n+2} c_{n+1}^3)`
/// for `n` above the base index, and `−α^3 b_{n+1} b_{n+2} / (c_n c_{n+1}^3 c_{n+2})`
/// (the same quantity via the Casoratian identity) at the base index.
pub fn lifted_wronskian_closed_form(a: &SolutionSeq, b: &SolutionSeq, n: i64) -> Result<Rational, LiftError> {
    let (c, bc) = base_coefficients(a.recurrence())?;
    let ce = |k: i64| c.eval(k);
    let denom = ce(n)? * rational::rational_pow(&ce(n + 1)?, 3) * ce(n + 2)?;
    let bb = bc.eval(n + 1)? * bc.eval(n + 2)?;
    if n > a.base_index() {
        let cas = a.at(n)? * b.at(n - 1)? - b.at(n)? * a.at(n - 1)?;
        Ok(bb * rational::rational_pow(&ce(n - 1)?, 3) * rational::rational_pow(&cas, 3) / denom)
    } else {
        let alpha = crate::recurrence::casoratian_constant(a, b)?;
        Ok(-(rational::rational_pow(&alpha, 3) * bb) / denom)
    }
}

/// Growth factors for the ζ(3) lifted Wronskian:
/// `R_n (A_n B_{n-1} − B_n A_{n-1})^3 = L_n W(0)` with
/// `R_n = (2n+3)(2n+5)(17n²+51n+39)(17n²+85n+107) n^9 / ((n+1)^3 (n+2)^9 (n+3)^3)` and
/// `L_n = Π_{m=1}^{n} m^3 (m+1)^6 (2m+5)(17m²+85m+107) / ((m+2)^6 (m+3)^3 (2m+1)(17m²+17m+5))`.
pub fn apery_wronskian_factors(n: i64) -> (Rational, Rational) {
    let p = |s: &str, x: i64| -> Rational {
        rational::big(s.parse::<Poly>().expect("fixed polynomial").eval(x))
    };
    let r = p("(2n+3)(2n+5)(17n^2+51n+39)(17n^2+85n+107)n^9", n)
        / p("(n+1)^3 (n+2)^9 (n+3)^3", n);
    let mut l = Rational::one();
    for m in 1..=n {
        l *= p("n^3 (n+1)^6 (2n+5)(17n^2+85n+107)", m) / p("(n+2)^6 (n+3)^3 (2n+1)(17n^2+17n+5)", m);
    }
    (r, l)
}

/// The ζ(3) four-term relation written out as polynomials in `n`.
pub fn apery3_four_term() -> [CoeffExpr; 4] {
    [
        "(n+3)^3 (n+2)^6 (2n+1)(17n^2+17n+5)",
        "-(2n+1)(17n^2+17n+5)(1155n^6+13860n^5+68535n^4+178680n^3+259059n^2+198156n+62531)(n+2)^3",
        "(2n+5)(17n^2+85n+107)(1155n^6+6930n^5+16560n^4+20040n^3+12954n^2+4308n+584)(n+1)^3",
        "-(n+1)^6 n^3 (2n+5)(17n^2+85n+107)",
    ]
    .map(|s| s.parse().expect("fixed polynomial"))
}

/// The ζ(2) four-term relation written out as polynomials in `n`.
pub fn apery2_four_term() -> [CoeffExpr; 4] {
    [
        "(n+3)^2 (n+2)^4 (11n^2+11n+3)",
        "-(11n^2+11n+3)(122n^4+976n^3+2873n^2+3684n+1741)(n+2)^2",
        "-(11n^2+55n+69)(122n^4+488n^3+677n^2+378n+76)(n+1)^2",
        "(n+1)^4 n^2 (11n^2+55n+69)",
    ]
    .map(|s| s.parse().expect("fixed polynomial"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::{NamedPair, PairName};
    use crate::rational::rat;

    #[test]
    fn fibonacci_four_term() {
        let pair = NamedPair::get(PairName::Fib);
        let lifted = lift_m2(&pair.recurrence, 20).unwrap();
        for n in 1..=20 {
            assert_eq!(lifted.coefficients_at(n).unwrap(), [1, -2, -2, 1].map(int));
        }
    }

    #[test]
    fn apery_four_term_matches_written_out_form() {
        let pair = NamedPair::get(PairName::Apery3);
        let lifted = lift_m2(&pair.recurrence, 10).unwrap();
        let written = apery3_four_term();
        for (i, w) in written.iter().enumerate() {
            assert_eq!(lifted.relation.coeffs()[i], Coefficient::Expr(w.clone()));
        }
        assert_eq!(lifted.coefficients_at(1).unwrap(), [5458752, -2470262184, 731862824, -93632].map(int));
    }

    #[test]
    fn zeta2_four_term_matches_written_out_form() {
        let pair = NamedPair::get(PairName::Apery2);
        let lifted = lift_m2(&pair.recurrence, 10).unwrap();
        for (i, w) in apery2_four_term().iter().enumerate() {
            assert_eq!(lifted.relation.coeffs()[i], Coefficient::Expr(w.clone()));
        }
        assert_eq!(lifted.coefficients_at(1).unwrap(), [32400, -2114100, -940140, 2160].map(int));
    }

    #[test]
    fn components_small() {
        let (a, b) = NamedPair::get(PairName::Apery3).solutions(6).unwrap();
        assert_eq!(symmetric_component(&a, &b, 2, 1, 0).unwrap(), int(6));
        assert_eq!(symmetric_component(&a, &b, 2, 0, 1).unwrap(), int(5 * 73));
        let (f, g) = NamedPair::get(PairName::Fib).solutions(10).unwrap();
        // m = 4, two B's: C(4,2) = 6 products.
        let j = 2;
        let (x, y) = (|i: i64| f.at(j + i).unwrap().clone(), |i: i64| g.at(j + i).unwrap().clone());
        let mut expected = Rational::zero();
        for s in [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] {
            let mut p = Rational::one();
            for t in 0..4 {
                p *= if s.contains(&t) { y(t) } else { x(t) };
            }
            expected += p;
        }
        assert_eq!(symmetric_component(&f, &g, 4, 2, j).unwrap(), expected);
    }

    #[test]
    fn degenerate_five_term() {
        // b_{n+1} b_n = c_n^2 everywhere: c = 1, b = 1.
        let base = Arc::new(Recurrence::three_term(CoeffExpr::constant(1), CoeffExpr::constant(1), 1));
        assert_eq!(lift_m3(&base, 5).unwrap_err(), LiftError::HypothesisViolated(1));
        let base = Arc::new(Recurrence::three_term(
            "n+1".parse::<CoeffExpr>().unwrap(),
            "n-2".parse::<CoeffExpr>().unwrap(),
            1,
        ));
        assert_eq!(lift_m2(&base, 5).unwrap_err(), LiftError::HypothesisViolated(2));
    }

    #[test]
    fn wronskian_at_zero() {
        let (a, b) = NamedPair::get(PairName::Apery3).solutions(8).unwrap();
        let basis = LiftedBasis::new(&a, &b, 2).unwrap();
        assert_eq!(lifted_wronskian(&basis, 0).unwrap(), rat(-62595, 64));
        for n in 0..=4 {
            assert_eq!(lifted_wronskian(&basis, n).unwrap(), lifted_wronskian_closed_form(&a, &b, n).unwrap());
        }
    }

    #[test]
    fn general_lift_fibonacci() {
        let pair = NamedPair::get(PairName::Fib);
        let gl = GeneralLift::new(&pair.recurrence, 2, 10).unwrap();
        for n in 1..=10 {
            let (v, norm) = gl.coefficients(n).unwrap();
            assert_eq!(norm, Normalization::TrailingMatchesClosedForm);
            assert_eq!(v, [1, -2, -2, 1].map(int));
        }
    }

    #[test]
    fn tabulated_base_lifts_numerically() {
        let rec = crate::recurrence::to_self_adjoint(
            &"n+1".parse().unwrap(),
            &"n+2".parse().unwrap(),
            &"3n+4".parse().unwrap(),
            &int(1),
            30,
        )
        .unwrap();
        let rec = Arc::new(rec);
        let lifted = lift_m2(&rec, 20).unwrap();
        let a = propagate(&rec, &[int(1), int(0)], 25).unwrap();
        let b = propagate(&rec, &[int(0), int(1)], 25).unwrap();
        let basis = LiftedBasis::new(&a, &b, 2).unwrap();
        assert_eq!(basis.first_violation(&lifted.relation).unwrap(), None);
    }
}
