//! The full battery of exactness checks and published numerical claims, as
//! run by `aperylift verify-all`.

use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebraicity::{bounded_height_scan, degree_test, CandidateCoefficients, Verdict};
use crate::apery::{closed_forms, integrality_check, Variant};
use crate::bounded::BoundedValue;
use crate::coeff::CoeffExpr;
use crate::criterion::{check_criterion, CriterionParams};
use crate::lift::{
    apery_wronskian_factors, lift_general, lift_m2, lift_m3, lifted_wronskian, proportional, LiftedBasis,
};
use crate::pairs::{NamedPair, PairName};
use crate::rational::{big, int, rat, to_sci_upper, ten_to_minus, Rational};
use crate::recurrence::casoratian;
use crate::reference::{correct_digits, reference_pi, reference_zeta};
use crate::series::{power_series_eval, wilf_identities_check, zeta3_accel, zeta3_apery_series, PowerSeriesSpec};

/// `Identity` checks are exact or rigorously bounded statements whose
/// failure means a bug or a false identity; `Claim` checks compare against
/// published numerical statements and may legitimately not be reproduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Identity,
    Claim,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
    /// Wall time; kept out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n_max: i64,
    pub checks: Vec<Check>,
    pub identities_hold: bool,
    pub claims_reproduced: bool,
}

type Outcome = Result<(bool, String), String>;

fn run(id: &str, kind: CheckKind, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    Check { id: id.to_string(), kind, passed, detail, millis: start.elapsed().as_millis() }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

pub fn closed_forms_match(variant: Variant, n: i64) -> Outcome {
    let pair = variant.pair();
    let (a, b) = pair.solutions(n).map_err(e)?;
    let cf = closed_forms(variant, n as u64);
    let bad = cf.iter().enumerate().find(|(i, (ca, cb))| a.values()[*i] != big(ca.clone()) || b.values()[*i] != *cb);
    Ok(match bad {
        None => (true, format!("{variant}: A_n, B_n closed forms equal the recurrence for n ≤ {n}")),
        Some((i, _)) => (false, format!("{variant}: mismatch at n = {i}")),
    })
}

/// `A_{n−1}B_n − A_nB_{n−1} = α / c_{n−1}` for `1 ≤ n ≤ n_max`.
pub fn casoratian_identity(name: PairName, alpha: i64, n_max: i64) -> Outcome {
    let pair = NamedPair::get(name);
    let (a, b) = pair.solutions(n_max).map_err(e)?;
    let (c, _) = pair.recurrence.as_three_term().ok_or("not three-term")?;
    for n in 1..=n_max {
        if casoratian(&a, &b, n).map_err(e)? * c.eval(n - 1).map_err(e)? != int(alpha) {
            return Ok((false, format!("{name}: fails at n = {n}")));
        }
    }
    Ok((true, format!("{name}: c_(n-1)·(A_(n-1)B_n − A_nB_(n-1)) = {alpha} for n ≤ {n_max}")))
}

fn lifted_residuals(name: PairName, m: usize, n_max: i64) -> Outcome {
    let pair = NamedPair::get(name);
    let lifted = if m == 2 { lift_m2(&pair.recurrence, n_max) } else { lift_m3(&pair.recurrence, n_max) }.map_err(e)?;
    let (a, b) = pair.solutions(n_max + 2 * m as i64).map_err(e)?;
    let basis = LiftedBasis::new(&a, &b, m).map_err(e)?;
    let range = basis.relation_range(&lifted.relation);
    let hi = *range.end().min(&n_max);
    let lo = *range.start();
    let hits: Vec<Option<(usize, i64)>> = (lo..=hi)
        .into_par_iter()
        .map(|n| (0..=m).find(|&k| !basis.residual(&lifted.relation, k, n).unwrap().is_zero()).map(|k| (k, n)))
        .collect();
    Ok(match hits.into_iter().flatten().next() {
        None => (true, format!("{name}: all {} components of the m = {m} lift vanish for {lo} ≤ n ≤ {hi}", m + 1)),
        Some((k, n)) => (false, format!("{name}: component {k} has nonzero residual at n = {n}")),
    })
}

fn fibonacci_lift() -> Outcome {
    let lifted = lift_m2(&NamedPair::get(PairName::Fib).recurrence, 20).map_err(e)?;
    for n in 1..=20 {
        if lifted.coefficients_at(n).map_err(e)? != [1, -2, -2, 1].map(int) {
            return Ok((false, format!("fib: coefficients differ at n = {n}")));
        }
    }
    Ok((true, "fib: m = 2 lift is (1, −2, −2, 1)".into()))
}

fn zeta2_leading(n_max: i64) -> Outcome {
    let lifted = lift_m2(&NamedPair::get(PairName::Apery2).recurrence, n_max).map_err(e)?;
    let expected: CoeffExpr = "(n+3)^2 (n+2)^4 (11n^2+11n+3)".parse().map_err(e)?;
    for n in 1..=n_max {
        if lifted.coefficients_at(n).map_err(e)?[0] != expected.eval(n).map_err(e)? {
            return Ok((false, format!("zeta2: leading coefficient differs at n = {n}")));
        }
    }
    Ok((true, format!("zeta2: leading coefficient (n+3)^2(n+2)^4(11n^2+11n+3) for n ≤ {n_max}")))
}

fn determinant_lift(m: usize, n_max: i64) -> Outcome {
    let pair = NamedPair::get(PairName::Apery3);
    let lifted = if m == 2 { lift_m2(&pair.recurrence, n_max) } else { lift_m3(&pair.recurrence, n_max) }.map_err(e)?;
    let bad: Vec<i64> = (1..=n_max)
        .into_par_iter()
        .filter(|&n| {
            let g = lift_general(&pair.recurrence, m, n).unwrap();
            !proportional(&g, &lifted.coefficients_at(n).unwrap())
        })
        .collect();
    Ok(match bad.first() {
        None => (true, format!("apery3: determinant lift (m = {m}) proportional to the closed form for n ≤ {n_max}")),
        Some(n) => (false, format!("apery3: m = {m} not proportional at n = {n}")),
    })
}

fn wronskian(n_max: i64) -> Outcome {
    let (a, b) = NamedPair::get(PairName::Apery3).solutions(n_max + 3).map_err(e)?;
    let basis = LiftedBasis::new(&a, &b, 2).map_err(e)?;
    let w0 = lifted_wronskian(&basis, 0).map_err(e)?;
    if w0 != rat(-62595, 64) {
        return Ok((false, format!("W(0) = {w0}")));
    }
    for n in 1..=n_max {
        let (r, l) = apery_wronskian_factors(n);
        let cas = a.at(n).unwrap() * b.at(n - 1).unwrap() - b.at(n).unwrap() * a.at(n - 1).unwrap();
        if r * crate::rational::rational_pow(&cas, 3) != l * &w0 {
            return Ok((false, format!("R_n/L_n identity fails at n = {n}")));
        }
    }
    Ok((true, format!("W(0) = −62595/64; R_n(A_nB_(n-1) − B_nA_(n-1))^3 = L_n W(0) for n ≤ {n_max}")))
}

/// `(accelerated digits, central-binomial digits)` at 5 terms.
pub fn digit_claims() -> Result<(u32, u32), String> {
    let reference = reference_zeta(3, 40).map_err(e)?;
    let fast = correct_digits(&zeta3_accel(5).map_err(e)?, &reference).map_err(e)?;
    let slow = correct_digits(&zeta3_apery_series(5).map_err(e)?, &reference).map_err(e)?;
    Ok((fast, slow))
}

/// Upper bound on `|series − ζ^m|` using the partial sum centre.
pub fn power_series_error(variant: Variant, m: u32, terms: usize) -> Result<Rational, String> {
    let spec = PowerSeriesSpec::builtin(variant, m).map_err(e)?;
    let value = power_series_eval(&spec, terms).map_err(e)?;
    let target = match variant {
        Variant::Zeta3 => reference_zeta(3, 60).map_err(e)?.pow(m),
        Variant::Zeta2 => reference_pi(60).pow(2).scale(&rat(1, 6)).pow(m),
    };
    let centre = BoundedValue::exact(value.value().clone(), 40);
    Ok(centre.max_distance(&target))
}

fn power_series() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (variant, m, terms, tol) in [
        (Variant::Zeta3, 2, 25, 30),
        (Variant::Zeta3, 3, 25, 30),
        (Variant::Zeta3, 4, 25, 30),
        (Variant::Zeta3, 5, 25, 30),
        (Variant::Zeta2, 2, 20, 15),
        (Variant::Zeta2, 3, 20, 15),
    ] {
        let err = power_series_error(variant, m, terms)?;
        ok &= err < ten_to_minus(tol);
        lines.push(format!("{variant}^{m}: {}", to_sci_upper(&err)));
    }
    Ok((ok, lines.join(", ")))
}

fn wilf(terms: usize) -> Result<(bool, bool, String), String> {
    let rep = wilf_identities_check(terms).map_err(e)?;
    let tol = ten_to_minus(25);
    let raw = rep.first.raw_residual < tol && rep.second.raw_residual < tol;
    let certified = rep.first.certified_residual < tol
        && rep.second.certified_residual < tol
        && rep.combination_residual < ten_to_minus(20)
        && rep.combination_is_solution;
    let detail = format!(
        "raw {} / {}; full series {} / {}; C_20/A_20 {}",
        to_sci_upper(&rep.first.raw_residual),
        to_sci_upper(&rep.second.raw_residual),
        to_sci_upper(&rep.first.certified_residual),
        to_sci_upper(&rep.second.certified_residual),
        to_sci_upper(&rep.combination_residual),
    );
    Ok((raw, certified, detail))
}

fn algebraicity() -> Outcome {
    let (fa, fb) = NamedPair::get(PairName::Fib).solutions(42).map_err(e)?;
    let fib = CandidateCoefficients::from_abc(int(-1), int(1), rat(-1, 2)).map_err(e)?;
    let rep = degree_test(&fa, &fb, &fib, 40).map_err(e)?;
    let fib_ok = rep.verdict == Verdict::Vanishing
        && rep.implied_polynomial == [int(1), int(-1), int(-1)]
        && rep.polynomial_at_limit.as_ref().is_some_and(|p| p.max_abs() < ten_to_minus(8));

    let (pa, pb) = NamedPair::get(PairName::Pell).solutions(42).map_err(e)?;
    let pell = CandidateCoefficients::from_abc(int(-2), int(1), int(0)).map_err(e)?;
    let rep = degree_test(&pa, &pb, &pell, 40).map_err(e)?;
    let pell_ok = rep.verdict == Verdict::Vanishing && rep.implied_polynomial == [int(1), int(0), int(-2)];

    let mut scans = Vec::new();
    for name in [PairName::Apery3, PairName::Apery2] {
        let (a, b) = NamedPair::get(name).solutions(62).map_err(e)?;
        scans.push(bounded_height_scan(&a, &b, 2, 10, 60).map_err(e)?.len());
    }
    Ok((
        fib_ok && pell_ok && scans.iter().all(|&s| s == 0),
        format!("fib x^2 − x − 1: {fib_ok}; pell x^2 − 2: {pell_ok}; height-10 hits apery3/apery2: {scans:?}"),
    ))
}

fn integrality(n: u64) -> Outcome {
    let rep = integrality_check(n).map_err(e)?;
    Ok((rep.all_pass, format!("2·lcm(1..n)^3·B_n ∈ 6ℤ for n ≤ {n}: first failure {:?}", rep.first_failure)))
}

/// `(strictly decreasing on [10, 100], value at 50, first index of increase)`.
pub fn decay_claim() -> Result<(bool, Rational, Option<i64>), String> {
    let pair = NamedPair::get(PairName::Apery3);
    let (a, b) = pair.solutions(100).map_err(e)?;
    let rep = check_criterion(&pair.recurrence, &a, &b, &CriterionParams::apery_zeta3(), 100).map_err(e)?;
    let trace: Vec<(i64, Rational)> =
        rep.decay.iter().filter(|r| r.m >= 10).map(|r| (r.m, r.exact.clone().unwrap())).collect();
    let first_increase = trace.windows(2).find(|w| w[1].1 >= w[0].1).map(|w| w[1].0);
    let at50 = trace.iter().find(|(m, _)| *m == 50).map(|(_, v)| v.clone()).ok_or("m = 50 missing")?;
    Ok((first_increase.is_none(), at50, first_increase))
}

/// Run every check; ranges are capped at `n_max`.
pub fn verify_all(n_max: i64) -> VerifyReport {
    use CheckKind::*;
    let cap = |x: i64| x.min(n_max).max(1);
    let mut checks = vec![
        run("closed-forms-zeta3", Identity, || closed_forms_match(Variant::Zeta3, cap(300))),
        run("closed-forms-zeta2", Identity, || closed_forms_match(Variant::Zeta2, cap(300))),
        run("casoratian-apery3", Identity, || casoratian_identity(PairName::Apery3, 6, cap(300))),
        run("casoratian-apery2", Identity, || casoratian_identity(PairName::Apery2, 5, cap(300))),
        run("casoratian-fib", Identity, || casoratian_identity(PairName::Fib, -1, cap(300))),
        run("four-term-apery3", Identity, || lifted_residuals(PairName::Apery3, 2, cap(200))),
        run("four-term-fib", Identity, fibonacci_lift),
        run("four-term-zeta2-leading", Identity, || zeta2_leading(cap(200))),
        run("five-term-apery3", Identity, || lifted_residuals(PairName::Apery3, 3, cap(100))),
        run("determinant-m2", Identity, || determinant_lift(2, cap(50))),
        run("determinant-m3", Identity, || determinant_lift(3, cap(50))),
        run("wronskian", Identity, || wronskian(cap(50))),
        run("power-series", Identity, power_series),
        run("algebraicity", Identity, algebraicity),
        run("integrality", Identity, || integrality(cap(120) as u64)),
    ];
    checks.push(run("digits-accelerated-18", Claim, || {
        let (fast, _) = digit_claims()?;
        Ok((fast >= 18, format!("5 terms give {fast} correct decimals")))
    }));
    checks.push(run("digits-central-binomial-4", Claim, || {
        let (_, slow) = digit_claims()?;
        Ok((slow == 4, format!("5 terms give {slow} correct decimals")))
    }));
    let wilf_result = wilf(30);
    checks.push(run("wilf-full-series", Identity, || {
        let (_, certified, detail) = wilf_result.clone()?;
        Ok((certified, detail))
    }));
    checks.push(run("wilf-30-terms-1e-25", Claim, || {
        let (raw, _, detail) = wilf_result.clone()?;
        Ok((raw, detail))
    }));
    checks.push(run("decay-trace", Claim, || {
        let (mono, at50, first) = decay_claim()?;
        let ok = mono && at50 < ten_to_minus(10);
        Ok((ok, format!("strictly decreasing on [10,100]: {mono} (first increase {first:?}); m = 50: {}", to_sci_upper(&at50))))
    }));
    let identities_hold = checks.iter().filter(|c| c.kind == Identity).all(|c| c.passed);
    let claims_reproduced = checks.iter().filter(|c| c.kind == Claim).all(|c| c.passed);
    VerifyReport { n_max, checks, identities_hold, claims_reproduced }
}
