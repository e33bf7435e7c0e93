//! Condition diagnostics for the irrationality criterion on a three-term
//! recurrence: summability of `Σ 1/c_n^k`, the growth condition
//! `b_n − c_n − c_{n−1} > ε_n c_n`, summability of `Σ 1/A_n^δ` (k > 1) and the
//! decay of `lcm(d_m, e_m) / A_m^{1−δ/k'}`. Reports condition satisfaction
//! only; no irrationality statement is made.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::apery::LcmTable;
use crate::bounded::BoundedValue;
use crate::coeff::CoeffExpr;
use crate::rational::{self, big, int, Rational};
use crate::recurrence::{Coefficient, Recurrence, RecurrenceError, SolutionSeq};

/// A denominator-clearing sequence `m ↦ d_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clearing {
    /// `d_m = 1`.
    Unit,
    /// `d_m = factor · lcm(1..m)^exponent`.
    LcmPower { factor: i64, exponent: u32 },
    /// Explicit values starting at `m = 0`.
    Table(#[serde(serialize_with = "bigints")] Vec<BigInt>),
}

fn bigints<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

impl Clearing {
    fn values(&self, n_max: u64) -> Option<Vec<BigInt>> {
        match self {
            Clearing::Unit => Some(vec![BigInt::one(); n_max as usize + 1]),
            Clearing::LcmPower { factor, exponent } => {
                let lcm = LcmTable::new(n_max);
                Some((0..=n_max).map(|m| lcm.get(m).pow(*exponent) * factor).collect())
            }
            Clearing::Table(v) => (v.len() > n_max as usize).then(|| v[..=n_max as usize].to_vec()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionParams {
    pub k: u32,
    /// `0 < δ < k/(k−1)`; ignored when `k = 1`.
    #[serde(serialize_with = "rational::json::rational")]
    pub delta: Rational,
    pub d_seq: Clearing,
    pub e_seq: Clearing,
    pub eps: CoeffExpr,
}

impl CriterionParams {
    /// `k = 1`, `d_m = 1`, `e_m = 2·lcm(1..m)³`, `ε_n = 1/n`.
    pub fn apery_zeta3() -> Self {
        CriterionParams {
            k: 1,
            delta: Rational::zero(),
            d_seq: Clearing::Unit,
            e_seq: Clearing::LcmPower { factor: 2, exponent: 3 },
            eps: "1/n".parse().expect("valid expression"),
        }
    }

    /// `1 − δ/k'` with `k' = k/(k−1)`; `1` when `k = 1`.
    pub fn decay_exponent(&self) -> Rational {
        if self.k <= 1 {
            return Rational::one();
        }
        let k = int(self.k as i64);
        Rational::one() - &self.delta * (&k - int(1)) / k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `c_n > 0`.
    CPositive,
    /// `Σ 1/c_{n−1}^k < ∞`.
    ReciprocalSum,
    /// `b_n − c_n − c_{n−1} > ε_n c_n`.
    GrowthMargin,
    /// `Σ ε_n = ∞`.
    EpsilonDivergent,
    /// `Σ 1/A_n^δ < ∞` (k > 1 only).
    PowerSum,
    /// `d_m A_m, e_m B_m ∈ ℤ⁺`.
    Integrality,
    /// `lcm(d_m, e_m) / A_m^{1−δ/k'} → 0`.
    Decay,
    /// Invalid parameters.
    Parameters,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CriterionVerdict {
    AllConditionsObserved,
    Violation { condition: Condition, index: Option<i64> },
}

#[derive(Clone, Debug, Serialize)]
pub struct SummabilityReport {
    /// From the degree when `c_n` is a polynomial of constant sign.
    pub symbolic: Option<bool>,
    /// No symbolic verdict: the trace below is all there is.
    pub heuristic: bool,
    /// `Σ_{n=lo}^{N} 1/|c_{n−1}|^k` at checkpoints `N`.
    pub partial_sums: Vec<(i64, BoundedValue)>,
    /// Integral-comparison bound on the remainder past the last checkpoint.
    #[serde(serialize_with = "rational::json::opt_rational")]
    pub tail_bound: Option<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: i64,
    /// `b_n − c_n − c_{n−1} − ε_n c_n`.
    #[serde(serialize_with = "rational::json::rational")]
    pub margin: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayRow {
    pub m: i64,
    /// Exact ratio when the exponent is 1.
    #[serde(serialize_with = "rational::json::opt_rational")]
    pub exact: Option<Rational>,
    pub log10: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityRow {
    pub m: i64,
    pub d_times_a: bool,
    pub e_times_b: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub params: CriterionParams,
    pub n_max: i64,
    pub first_c_nonpositive: Option<i64>,
    pub summability: SummabilityReport,
    pub growth: Vec<GrowthRow>,
    /// `Σ ε_n` diverges, decided from degrees for rational `ε_n`.
    pub epsilon_divergent: Option<bool>,
    /// Ratio-test heuristic on `A_n^δ` for `k > 1`.
    pub power_sum_observed: Option<bool>,
    pub integrality: Vec<IntegralityRow>,
    pub decay: Vec<DecayRow>,
    /// Smallest `m0` with the decay trace strictly decreasing on `[m0, n_max]`.
    pub decay_strictly_decreasing_from: Option<i64>,
    /// Trace at `n_max` below its value at `n_max/2`.
    pub decay_trending_down: bool,
    pub verdict: CriterionVerdict,
}

/// `Some(true)` if `Σ_{n≥1} e(n)` diverges, for a single-part rational `e`
/// with eventually positive values.
fn divergent_sum(e: &CoeffExpr) -> Option<bool> {
    let (rf, alternating) = e.as_single()?;
    if alternating {
        return None;
    }
    let (num, den) = (rf.num(), rf.den());
    if num.is_zero() {
        return Some(false);
    }
    let gap = den.degree()? as i64 - num.degree()? as i64;
    Some(gap <= 1)
}

fn c_polynomial(c: &Coefficient) -> Option<crate::poly::Poly> {
    let (rf, alternating) = c.as_expr()?.as_single()?;
    if alternating {
        return None;
    }
    Some(rf.as_poly()?.clone())
}

/// Check each condition over `1..=n_max` (relation indices of `rec`).
pub fn check_criterion(
    rec: &Recurrence,
    a: &SolutionSeq,
    b: &SolutionSeq,
    params: &CriterionParams,
    n_max: i64,
) -> Result<CriterionReport, RecurrenceError> {
    let (c, bcoef) = rec.as_three_term().ok_or(RecurrenceError::NotThreeTerm)?;
    let lo = rec.first_index().max(1);
    let k = params.k.max(1);
    let mut violation: Option<(Condition, Option<i64>)> = None;
    let mut flag = |cond: Condition, idx: Option<i64>| {
        if violation.is_none() {
            violation = Some((cond, idx));
        }
    };
    if params.k == 0 || (params.k > 1 && !(params.delta.is_positive() && params.delta < int(params.k as i64) / int(params.k as i64 - 1))) {
        flag(Condition::Parameters, None);
    }

    let mut first_c_nonpositive = None;
    for n in lo - 1..=n_max {
        if !c.eval(n)?.is_positive() {
            first_c_nonpositive = Some(n);
            break;
        }
    }
    if let Some(n) = first_c_nonpositive {
        flag(Condition::CPositive, Some(n));
    }

    // Σ 1/|c_{n−1}|^k
    let poly = c_polynomial(&c);
    let symbolic = poly.as_ref().map(|p| p.degree().unwrap_or(0) * k as usize >= 2);
    let checkpoints: Vec<i64> = [10, 100, 1000].into_iter().filter(|&x| x < n_max).chain([n_max]).collect();
    let mut partial_sums = Vec::new();
    let mut acc = Rational::zero();
    for n in lo..=n_max {
        let cv = c.eval(n - 1)?;
        if !cv.is_zero() {
            acc += num_traits::pow(cv.abs(), k as usize).recip();
        }
        if checkpoints.contains(&n) {
            partial_sums.push((n, BoundedValue::exact(acc.clone(), 20)));
        }
    }
    let tail_bound = poly.as_ref().and_then(|p| p.reciprocal_tail_bound(k, n_max));
    if symbolic == Some(false) {
        flag(Condition::ReciprocalSum, None);
    }
    let summability = SummabilityReport { symbolic, heuristic: symbolic.is_none(), partial_sums, tail_bound };

    let mut growth = Vec::new();
    for n in lo..=n_max {
        let cn = c.eval(n)?;
        let margin = bcoef.eval(n)? - &cn - c.eval(n - 1)? - params.eps.eval(n).map_err(RecurrenceError::Coefficient)? * &cn;
        let holds = margin.is_positive();
        if !holds {
            flag(Condition::GrowthMargin, Some(n));
        }
        growth.push(GrowthRow { n, margin, holds });
    }
    let epsilon_divergent = divergent_sum(&params.eps);
    if epsilon_divergent == Some(false) {
        flag(Condition::EpsilonDivergent, None);
    }

    let power_sum_observed = (k > 1).then(|| {
        // A_n^δ grows at least geometrically over the last ten indices
        let delta = rational::to_f64(&params.delta);
        (n_max - 9..=n_max).all(|n| match (a.get(n), a.get(n - 1)) {
            (Some(x), Some(y)) if x.is_positive() && y.is_positive() => {
                delta * (rational::log10_abs(x) - rational::log10_abs(y)) > 0.01
            }
            _ => false,
        })
    });
    if power_sum_observed == Some(false) {
        flag(Condition::PowerSum, Some(n_max));
    }

    let nm = n_max.max(0) as u64;
    let (d_vals, e_vals) = (params.d_seq.values(nm), params.e_seq.values(nm));
    let mut integrality = Vec::new();
    let mut decay = Vec::new();
    if let (Some(d_vals), Some(e_vals)) = (d_vals, e_vals) {
        let exponent = params.decay_exponent();
        let exact_exponent = exponent.is_one();
        let exp_f = rational::to_f64(&exponent);
        for m in lo..=n_max {
            let (Some(am), Some(bm)) = (a.get(m), b.get(m)) else { break };
            let (dm, em) = (&d_vals[m as usize], &e_vals[m as usize]);
            let da = big(dm.clone()) * am;
            let eb = big(em.clone()) * bm;
            let row = IntegralityRow {
                m,
                d_times_a: rational::is_integer(&da) && da.is_positive(),
                e_times_b: rational::is_integer(&eb) && eb.is_positive(),
            };
            if !(row.d_times_a && row.e_times_b) {
                flag(Condition::Integrality, Some(m));
            }
            integrality.push(row);
            if !am.is_positive() {
                continue;
            }
            let l = big(dm.lcm(em));
            let exact = exact_exponent.then(|| &l / am);
            let log10 = rational::log10_abs(&l) - exp_f * rational::log10_abs(am);
            decay.push(DecayRow { m, exact, log10 });
        }
    }
    let decreasing = |x: &DecayRow, y: &DecayRow| match (&x.exact, &y.exact) {
        (Some(p), Some(q)) => q < p,
        _ => y.log10 < x.log10,
    };
    let decay_strictly_decreasing_from = if decay.is_empty() {
        None
    } else {
        let mut start = decay.len() - 1;
        while start > 0 && decreasing(&decay[start - 1], &decay[start]) {
            start -= 1;
        }
        Some(decay[start].m)
    };
    let decay_trending_down = match (decay.get(decay.len() / 2), decay.last()) {
        (Some(mid), Some(last)) if decay.len() > 1 => decreasing(mid, last),
        _ => false,
    };
    if !decay_trending_down {
        flag(Condition::Decay, Some(n_max));
    }

    let verdict = match violation {
        None => CriterionVerdict::AllConditionsObserved,
        Some((condition, index)) => CriterionVerdict::Violation { condition, index },
    };
    Ok(CriterionReport {
        params: params.clone(),
        n_max,
        first_c_nonpositive,
        summability,
        growth,
        epsilon_divergent,
        power_sum_observed,
        integrality,
        decay,
        decay_strictly_decreasing_from,
        decay_trending_down,
        verdict,
    })
}
