//! Enclosures for `lim B_n/A_n` and degree tests: a rational combination `S_n`
//! of the symmetric product basis whose ratio to `A_n A_{n−1} ⋯ A_{n−m+1}` tends
//! to zero certifies that the limit is a root of the implied polynomial.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounded::BoundedValue;
use crate::lift::{LiftError, LiftedBasis};
use crate::linalg;
use crate::rational::{self, big, binomial, int, ten_to_minus, Rational};
use crate::recurrence::{casoratian_constant, disconjugacy_report, RecurrenceError, SolutionSeq};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraicityError {
    #[error("tail bound hypotheses not certified: {0}")]
    HypothesesNotCertified(String),
    #[error("sample matrix is singular")]
    SingularSystem,
    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },
    #[error("candidate coefficients are all zero")]
    ZeroCandidate,
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

/// Digits used when rendering traces.
const RENDER_DIGITS: u32 = 30;
/// Window, threshold and contraction factor of the "→ 0" decision rule.
const WINDOW: usize = 10;
const VANISH_EXP: u32 = 6;
const CONTRACTION: (i64, i64) = (9, 10);

/// Enclose `lim B_j/A_j` by `B_n/A_n ± radius`.
///
/// Two routes are available:
/// * `c` a polynomial of degree `d ≥ 2`, positive coefficients dominating on
///   `[n, ∞)`, disconjugacy hypotheses and `0 < A_1 < … < A_n` observed on
///   `[1, n]`: radius `|α| Σ_{k≥n} 1/c_k / A_n²` with the sum bounded by
///   `(n^{−d} + n^{1−d}/(d−1))/μ`;
/// * `c` of alternating sign with `|c_{j−1} A_j A_{j−1}|` increasing on the
///   computed range past `n` and `A > 0`: the tail alternates and the radius
///   is the first omitted term `|α|/(|c_n| A_{n+1} A_n)`.
pub fn limit_estimate(a: &SolutionSeq, b: &SolutionSeq, n: i64) -> Result<BoundedValue, AlgebraicityError> {
    let not = |s: &str| AlgebraicityError::HypothesesNotCertified(s.to_string());
    let rec = a.recurrence();
    let (c, _) = rec.as_three_term().ok_or_else(|| not("recurrence is not three-term"))?;
    let alpha = casoratian_constant(a, b)?;
    let an = a.at(n)?;
    if !an.is_positive() {
        return Err(not("A_n is not positive"));
    }
    let centre = b.at(n)? / an;
    let lo = rec.first_index().max(a.base_index() + 1);

    let poly = c.as_expr().and_then(|e| e.as_single()).filter(|(_, alt)| !alt).and_then(|(rf, _)| rf.as_poly());
    if let Some(p) = poly {
        if p.degree().unwrap_or(0) < 2 {
            return Err(not("c_n is a polynomial of degree below 2"));
        }
        let report = disconjugacy_report(rec, lo, n)?;
        if !report.disconjugate_on_range {
            return Err(not("disconjugacy hypotheses fail on the computed range"));
        }
        if !(lo..=n).all(|j| a.at(j).is_ok_and(|v| v.is_positive()) && a.at(j).unwrap() > a.at(j - 1).unwrap()) {
            return Err(not("A_n is not positive and increasing on the computed range"));
        }
        // Σ_{j>n} 1/c_{j−1} = Σ_{k≥n} 1/c_k
        let tail = p.reciprocal_tail_bound(1, n).ok_or_else(|| not("cannot bound c_k below on the tail"))?;
        let radius = alpha.abs() * tail / (an * an);
        return Ok(BoundedValue::new(centre, radius, RENDER_DIGITS));
    }

    // alternating route
    let hi = a.last_index();
    if hi <= n {
        return Err(not("A_{n+1} not available"));
    }
    let weight = |j: i64| -> Result<Rational, AlgebraicityError> { Ok((c.eval(j - 1)? * a.at(j)? * a.at(j - 1)?).abs()) };
    for j in n + 1..=hi {
        let cj = c.eval(j - 1)?;
        let cprev = c.eval(j - 2)?;
        if cj.is_zero() || cj.is_positive() == cprev.is_positive() {
            return Err(not("c_n neither a dominant polynomial nor of alternating sign"));
        }
        if !a.at(j)?.is_positive() {
            return Err(not("A_n is not positive past n"));
        }
        if j > n + 1 && weight(j)? <= weight(j - 1)? {
            return Err(not("tail terms are not decreasing"));
        }
    }
    let radius = alpha.abs() / weight(n + 1)?;
    Ok(BoundedValue::new(centre, radius, RENDER_DIGITS))
}

/// Coefficients of `S = Σ_i a_i · (component with i factors of A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateCoefficients {
    pub m: usize,
    /// `coeffs[i]` multiplies the component with `i` factors of `A`
    /// (equivalently `m − i` factors of `B`).
    #[serde(serialize_with = "rational::json::rationals")]
    pub coeffs: Vec<Rational>,
}

impl CandidateCoefficients {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, AlgebraicityError> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(AlgebraicityError::ZeroCandidate);
        }
        Ok(CandidateCoefficients { m: coeffs.len() - 1, coeffs })
    }

    /// `S_n = a·A_nA_{n−1} + b·B_nB_{n−1} + c·(A_{n−1}B_n + A_nB_{n−1})`.
    pub fn from_abc(a: Rational, b: Rational, c: Rational) -> Result<Self, AlgebraicityError> {
        Self::new(vec![b, c, a])
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self, AlgebraicityError> {
        Self::new(coeffs.iter().map(|&v| int(v)).collect())
    }

    /// `(a, b, c)` of [`from_abc`](Self::from_abc) for `m = 2`.
    pub fn abc(&self) -> Option<(Rational, Rational, Rational)> {
        (self.m == 2).then(|| (self.coeffs[2].clone(), self.coeffs[0].clone(), self.coeffs[1].clone()))
    }

    /// `[a_0, C(m,1)a_1, …, a_m]`, the polynomial in `x` from `x^m` down to
    /// `x^0` whose value at the limit equals `lim S_n / Π A`.
    pub fn implied_polynomial(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * big(binomial(self.m as u64, i as u64)))
            .collect()
    }

    pub fn scaled(&self, k: &Rational) -> CandidateCoefficients {
        CandidateCoefficients { m: self.m, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// `S` at trace index `n` (product over `A_{n−m+1}..A_n`).
    pub fn evaluate(&self, basis: &LiftedBasis, n: i64) -> Option<Rational> {
        let j = n - self.m as i64 + 1;
        let mut s = Rational::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                s += a * basis.get(self.m - i, j)?;
            }
        }
        Some(s)
    }
}

/// Render descending coefficients as a polynomial in `x`.
pub fn format_polynomial(desc: &[Rational]) -> String {
    let deg = desc.len().saturating_sub(1);
    let mut out = String::new();
    for (i, c) in desc.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = deg - i;
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let unit = mag.is_one();
        if !unit || e == 0 {
            out.push_str(&mag.to_string());
        }
        match e {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{e}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Evaluate descending coefficients at an enclosure by Horner's scheme.
pub fn eval_polynomial(desc: &[Rational], x: &BoundedValue) -> BoundedValue {
    let mut acc = BoundedValue::exact(Rational::zero(), x.digits());
    for c in desc {
        acc = acc.mul(x).add(&BoundedValue::exact(c.clone(), x.digits()));
    }
    acc
}

/// Solve for the candidate reproducing `samples` (trace index, value).
pub fn candidate_from_samples(
    basis: &LiftedBasis,
    samples: &[(i64, Rational)],
) -> Result<CandidateCoefficients, AlgebraicityError> {
    let m = basis.m;
    if samples.len() != m + 1 {
        return Err(AlgebraicityError::SampleCount { expected: m + 1, got: samples.len() });
    }
    let mut matrix = Vec::with_capacity(m + 1);
    let mut rhs = Vec::with_capacity(m + 1);
    for (n, v) in samples {
        let j = n - m as i64 + 1;
        let row: Option<Vec<Rational>> = (0..=m).map(|i| basis.get(m - i, j).cloned()).collect();
        matrix.push(row.ok_or(LiftError::IndexOutOfRange(j))?);
        rhs.push(v.clone());
    }
    let coeffs = linalg::solve(matrix, rhs).ok_or(AlgebraicityError::SingularSystem)?;
    CandidateCoefficients::new(coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Vanishing,
    ConvergingNonzero,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct TracePoint {
    pub n: i64,
    pub ratio: BoundedValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeTestReport {
    pub candidate: CandidateCoefficients,
    /// `S_n / (A_n ⋯ A_{n−m+1})`, exact.
    pub ratio_trace: Vec<TracePoint>,
    pub verdict: Verdict,
    /// Enclosure of `lim S_n/Π A`: the implied polynomial at the certified
    /// enclosure of the limit when available, otherwise the last ratio with
    /// the last step as a heuristic radius.
    pub limit_estimate: BoundedValue,
    pub limit_certified: bool,
    /// Descending coefficients, `x^m` first.
    #[serde(serialize_with = "rational::json::rationals")]
    pub implied_polynomial: Vec<Rational>,
    pub implied_polynomial_text: String,
    /// Enclosure of `lim B_n/A_n` used for `polynomial_at_limit`.
    pub limit: Option<BoundedValue>,
    pub polynomial_at_limit: Option<BoundedValue>,
}

fn product_of_a(a: &SolutionSeq, m: usize, n: i64) -> Option<Rational> {
    let mut p = Rational::one();
    for t in 0..m as i64 {
        p *= a.get(n - t)?;
    }
    Some(p)
}

/// Verdict from the decision rule on the last `WINDOW` magnitudes.
fn decide(trace: &[Rational]) -> Verdict {
    if trace.len() < WINDOW {
        return Verdict::Inconclusive;
    }
    let tail: Vec<Rational> = trace[trace.len() - WINDOW..].iter().map(|r| r.abs()).collect();
    let last = &tail[WINDOW - 1];
    let prev = &tail[WINDOW - 2];
    let monotone = tail.windows(2).all(|w| w[1] < w[0] || (w[0].is_zero() && w[1].is_zero()));
    let small = *last < ten_to_minus(VANISH_EXP);
    let contracting = last.is_zero() || last * int(CONTRACTION.1) < prev * int(CONTRACTION.0);
    if monotone && small && contracting {
        return Verdict::Vanishing;
    }
    let step = (&trace[trace.len() - 1] - &trace[trace.len() - 2]).abs();
    let scale = if *last > Rational::one() { last.clone() } else { Rational::one() };
    if !small && step < ten_to_minus(VANISH_EXP) * scale {
        Verdict::ConvergingNonzero
    } else {
        Verdict::Inconclusive
    }
}

/// Trace `S_n/Π A` for `n ≤ n_max` and apply the decision rule.
pub fn degree_test(
    a: &SolutionSeq,
    b: &SolutionSeq,
    candidate: &CandidateCoefficients,
    n_max: i64,
) -> Result<DegreeTestReport, AlgebraicityError> {
    let basis = LiftedBasis::new(&a.truncated(n_max), &b.truncated(n_max), candidate.m)?;
    degree_test_with_basis(a, b, &basis, candidate, n_max)
}

fn degree_test_with_basis(
    a: &SolutionSeq,
    b: &SolutionSeq,
    basis: &LiftedBasis,
    candidate: &CandidateCoefficients,
    n_max: i64,
) -> Result<DegreeTestReport, AlgebraicityError> {
    let m = candidate.m;
    let mut ns = Vec::new();
    let mut ratios = Vec::new();
    for n in basis.base_index + m as i64 - 1..=n_max.min(basis.last_index() + m as i64 - 1) {
        let Some(prod) = product_of_a(a, m, n).filter(|p| !p.is_zero()) else { continue };
        let Some(s) = candidate.evaluate(basis, n) else { continue };
        ns.push(n);
        ratios.push(s / prod);
    }
    let verdict = decide(&ratios);
    let implied = candidate.implied_polynomial();

    let limit_index = n_max.min(a.last_index() - 1).min(b.last_index());
    let limit = limit_estimate(a, b, limit_index).ok();
    let polynomial_at_limit = limit.as_ref().map(|l| eval_polynomial(&implied, l));
    let (limit_estimate, limit_certified) = match &polynomial_at_limit {
        Some(p) => (p.clone(), true),
        None => {
            let k = ratios.len();
            let (last, radius) = match k {
                0 => (Rational::zero(), Rational::zero()),
                1 => (ratios[0].clone(), Rational::zero()),
                _ => (ratios[k - 1].clone(), (&ratios[k - 1] - &ratios[k - 2]).abs()),
            };
            (BoundedValue::new(last, radius, RENDER_DIGITS), false)
        }
    };
    let ratio_trace = ns
        .into_iter()
        .zip(ratios)
        .map(|(n, r)| TracePoint { n, ratio: BoundedValue::exact(r, RENDER_DIGITS) })
        .collect();
    Ok(DegreeTestReport {
        candidate: candidate.clone(),
        ratio_trace,
        verdict,
        limit_estimate,
        limit_certified,
        implied_polynomial_text: format_polynomial(&implied),
        implied_polynomial: implied,
        limit,
        polynomial_at_limit,
    })
}

/// Every primitive integer vector with entries in `[−height, height]`, first
/// nonzero entry positive, in lexicographic order.
pub fn primitive_vectors(len: usize, height: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-height; len];
    loop {
        let first = v.iter().find(|&&x| x != 0);
        if first.is_some_and(|&x| x > 0) && v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1 {
            out.push(v.clone());
        }
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < height {
                v[i] += 1;
                break;
            }
            v[i] = -height;
        }
    }
}

/// Every primitive candidate of height at most `height` whose degree test
/// reports `vanishing`. An empty result only means no certificate exists at
/// this height and range.
pub fn bounded_height_scan(
    a: &SolutionSeq,
    b: &SolutionSeq,
    m: usize,
    height: i64,
    n_max: i64,
) -> Result<Vec<DegreeTestReport>, AlgebraicityError> {
    if m < 2 || height < 1 {
        return Err(LiftError::BadOrder(m).into());
    }
    let basis = LiftedBasis::new(&a.truncated(n_max), &b.truncated(n_max), m)?;
    let last = (basis.last_index() + m as i64 - 1).min(n_max);
    let prod = product_of_a(a, m, last).filter(|p| !p.is_zero());
    // f64 prefilter: normalized components at the last index are O(1), so a
    // combination far above the 10⁻⁶ threshold cannot vanish there.
    let normalized: Option<Vec<f64>> = prod.map(|p| {
        (0..=m).map(|i| rational::to_f64(&(basis.get(m - i, last - m as i64 + 1).unwrap() / &p))).collect()
    });
    let vectors = primitive_vectors(m + 1, height);
    let reports: Vec<Option<DegreeTestReport>> = vectors
        .par_iter()
        .map(|v| -> Result<Option<DegreeTestReport>, AlgebraicityError> {
            if let Some(norm) = &normalized {
                let approx: f64 = v.iter().zip(norm).map(|(&x, r)| x as f64 * r).sum();
                if approx.abs() > 1e-3 {
                    return Ok(None);
                }
            }
            let cand = CandidateCoefficients::from_integers(v)?;
            let report = degree_test_with_basis(a, b, &basis, &cand, n_max)?;
            Ok((report.verdict == Verdict::Vanishing).then_some(report))
        })
        .collect::<Result<_, _>>()?;
    Ok(reports.into_iter().flatten().collect())
}

/// `|L̂·A_n − B_n| / A_n` over `lo..=hi`, with `L̂` the centre of `limit`.
pub fn recessive_trace(a: &SolutionSeq, b: &SolutionSeq, limit: &Rational, lo: i64, hi: i64) -> Vec<(i64, Rational)> {
    (lo..=hi)
        .filter_map(|n| {
            let an = a.get(n)?;
            Some((n, ((limit * an - b.get(n)?) / an).abs()))
        })
        .collect()
}
