use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;
use std::time::Instant;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use aperylift_core::algebraicity::{bounded_height_scan, degree_test, CandidateCoefficients, DegreeTestReport};
use aperylift_core::apery::{closed_forms, Variant};
use aperylift_core::cache::SequenceCache;
use aperylift_core::criterion::{check_criterion, Clearing, CriterionParams, CriterionVerdict};
use aperylift_core::lift::{lift_m2, lift_m3, GeneralLift, LiftedBasis, LiftedRecurrence};
use aperylift_core::pairs::{NamedPair, PairName};
use aperylift_core::rational::{big, to_decimal};
use aperylift_core::reference::{correct_digits, reference_zeta};
use aperylift_core::series::{generic_limit_series, power_series_eval, zeta3_accel, zeta3_apery_series, PowerSeriesSpec};
use aperylift_core::verify::verify_all;
use aperylift_core::{propagate, BoundedValue, Rational, Recurrence, SolutionSeq};

use crate::args::{
    AperyArgs, ClearingArg, CriterionArgs, DegreeArgs, LiftArgs, PropagateArgs, SeriesArgs, SeriesName, VerifyArgs,
};
use crate::output::{text_table, Artifact};
use crate::CliError;

/// Digits of the ζ(2), ζ(3) references used for digit counts.
const REFERENCE_DIGITS: u32 = 60;

pub struct Context {
    pub cache: Option<SequenceCache>,
    pub digits: u32,
}

fn rat_json(x: &Rational) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

fn rat_cell(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl Context {
    fn sequence(&self, key: &str, rec: &Arc<Recurrence>, init: &[Rational], n_max: i64) -> Result<SolutionSeq, CliError> {
        Ok(match &self.cache {
            Some(cache) => cache.get_or_propagate(key, rec, init, n_max)?,
            None => propagate(rec, init, n_max)?,
        })
    }

    fn pair(&self, name: PairName, n_max: i64) -> Result<(SolutionSeq, SolutionSeq), CliError> {
        let p = NamedPair::get(name);
        let a = self.sequence(&format!("{name}-a"), &p.recurrence, &p.a_initial, n_max)?;
        let b = self.sequence(&format!("{name}-b"), &p.recurrence, &p.b_initial, n_max)?;
        Ok((a, b))
    }

    fn decimal(&self, x: &Rational) -> String {
        to_decimal(x, self.digits)
    }
}

pub fn apery(ctx: &Context, args: &AperyArgs) -> Result<Artifact, CliError> {
    let n_max = args.n as i64;
    let (a, b) = ctx.pair(args.variant.pair().name, n_max)?;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in 0..=n_max {
        let (an, bn) = (a.at(n)?, b.at(n)?);
        let ratio = if an.is_zero() { String::new() } else { ctx.decimal(&(bn / an)) };
        rows.push(vec![n.to_string(), rat_cell(an), rat_cell(bn), ratio]);
        json_rows.push(json!({ "n": n, "a": rat_json(an), "b": rat_json(bn) }));
    }
    let mut mismatches = Vec::new();
    if args.verify {
        for (n, (ca, cb)) in closed_forms(args.variant, args.n).into_iter().enumerate() {
            if big(ca) != *a.at(n as i64)? || cb != *b.at(n as i64)? {
                mismatches.push(n);
            }
        }
    }
    let header = ["n", "a", "b", "b/a"];
    let mut text = text_table(&header.map(String::from), &rows);
    if args.verify {
        text.push_str(&match mismatches.first() {
            None => format!("closed forms agree with the recurrence for n <= {}\n", args.n),
            Some(n) => format!("closed forms disagree with the recurrence at n = {n}\n"),
        });
    }
    let failure = mismatches.first().map(|n| format!("closed form mismatch at n = {n}"));
    let doc = json!({
        "variant": args.variant,
        "n": args.n,
        "rows": json_rows,
        "closed_forms_verified": args.verify.then_some(mismatches.is_empty()),
        "mismatches": mismatches,
    });
    Ok(Artifact::new(doc, &header, rows, text).failing_if(failure))
}

pub fn propagate_cmd(ctx: &Context, args: &PropagateArgs) -> Result<Artifact, CliError> {
    let r = &args.recurrence;
    let (rec, default_init, key) = match (&r.pair, &r.c, &r.b) {
        (Some(name), _, _) => {
            let p = NamedPair::get(*name);
            (p.recurrence, Some(p.a_initial.to_vec()), Some(format!("{name}-a")))
        }
        (None, Some(c), Some(b)) => (Arc::new(Recurrence::three_term(c.clone(), b.clone(), 1)), None, None),
        _ => return Err(usage("give --pair or both --c and --b")),
    };
    if args.init.as_ref().is_some_and(|v| v.len() != 2) {
        return Err(usage("--init takes two values, for n = 0 and n = 1"));
    }
    let init = match (&args.init, default_init) {
        (Some(v), _) => v.clone(),
        (None, Some(v)) => v,
        (None, None) => return Err(usage("--init is required with --c/--b")),
    };
    if args.n < 1 {
        return Err(usage("--n must be at least 1"));
    }
    let key = match key {
        Some(k) if args.init.is_none() => k,
        _ => {
            let mut h = DefaultHasher::new();
            serde_json::to_string(&*rec)?.hash(&mut h);
            for v in &init {
                v.to_string().hash(&mut h);
            }
            format!("custom-{:016x}", h.finish())
        }
    };
    let seq = ctx.sequence(&key, &rec, &init, args.n)?;
    let violation = seq.first_violation()?;
    let rows: Vec<Vec<String>> = seq.iter().map(|(n, v)| vec![n.to_string(), rat_cell(v), ctx.decimal(v)]).collect();
    let header = ["n", "value", "decimal"];
    let mut text = text_table(&header.map(String::from), &rows);
    if let Some(n) = violation {
        text.push_str(&format!("relation fails at n = {n}\n"));
    }
    let doc = json!({
        "recurrence": &*rec,
        "initial": init.iter().map(rat_json).collect::<Vec<_>>(),
        "values": seq.iter().map(|(n, v)| json!({ "n": n, "value": rat_json(v) })).collect::<Vec<_>>(),
        "relation_holds": violation.is_none(),
    });
    Ok(Artifact::new(doc, &header, rows, text).failing_if(violation.map(|n| format!("relation fails at n = {n}"))))
}

pub fn lift(ctx: &Context, args: &LiftArgs) -> Result<Artifact, CliError> {
    let (lo, hi) = args.n_range;
    let m = args.m;
    if lo < 1 {
        return Err(usage("relation indices start at 1"));
    }
    let pair = NamedPair::get(args.base);
    let lifted: LiftedRecurrence = match m {
        2 => lift_m2(&pair.recurrence, hi)?,
        3 => lift_m3(&pair.recurrence, hi)?,
        m if m >= 4 => GeneralLift::new(&pair.recurrence, m, hi)?.tabulate(lo, hi)?,
        _ => return Err(usage("--m must be at least 2")),
    };
    let mut header = vec!["n".to_string()];
    header.extend((0..m + 2).map(|i| format!("p{i}")));
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in lo..=hi {
        let coeffs = lifted.coefficients_at(n)?;
        let mut row = vec![n.to_string()];
        row.extend(coeffs.iter().map(rat_cell));
        rows.push(row);
        json_rows.push(json!({ "n": n, "coefficients": coeffs.iter().map(rat_json).collect::<Vec<_>>() }));
    }
    let mut text = format!(
        "order-{} relation for {}-fold products of {} solutions, coefficients most advanced first\n",
        m + 1,
        m,
        args.base
    );
    text.push_str(&text_table(&header, &rows));
    let mut verification = Value::Null;
    let mut failure = None;
    if args.verify {
        let (a, b) = ctx.pair(args.base, hi + 2 * m as i64)?;
        let basis = LiftedBasis::new(&a, &b, m)?;
        let mut checked = 0usize;
        let mut nonzero = Vec::new();
        for n in lo..=hi {
            for k in 0..=m {
                checked += 1;
                if !basis.residual(&lifted.relation, k, n)?.is_zero() {
                    nonzero.push(json!({ "n": n, "component": k }));
                }
            }
        }
        text.push_str(&format!("{} of {checked} component residuals are zero\n", checked - nonzero.len()));
        if let Some(first) = nonzero.first() {
            failure = Some(format!("nonzero residual at {first}"));
        }
        verification = json!({ "checked": checked, "nonzero": nonzero.len(), "first_nonzero": nonzero.first() });
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let doc = json!({
        "base": args.base,
        "m": m,
        "n_range": [lo, hi],
        "normalization": lifted.normalization,
        "rows": json_rows,
        "verification": verification,
    });
    Ok(Artifact::new(doc, &header_refs, rows, text).failing_if(failure))
}

fn report_line(r: &DegreeTestReport) -> String {
    format!(
        "{:>16}  {:?}  limit of ratio {}",
        r.implied_polynomial_text,
        r.verdict,
        r.limit_estimate
    )
}

pub fn degree(ctx: &Context, args: &DegreeArgs) -> Result<Artifact, CliError> {
    if args.m < 2 {
        return Err(usage("--m must be at least 2"));
    }
    let (a, b) = ctx.pair(args.pair, args.n_max + args.m as i64 + 2)?;
    match (args.height, &args.candidate) {
        (Some(h), None) => {
            let hits = bounded_height_scan(&a, &b, args.m, h, args.n_max)?;
            let rows: Vec<Vec<String>> = hits
                .iter()
                .map(|r| {
                    let coeffs: Vec<String> = r.candidate.coeffs.iter().map(rat_cell).collect();
                    vec![coeffs.join(" "), r.implied_polynomial_text.clone(), format!("{:?}", r.verdict).to_lowercase()]
                })
                .collect();
            let mut text = format!(
                "{} candidate(s) of height <= {h} vanish for {} at m = {}\n",
                hits.len(),
                args.pair,
                args.m
            );
            for r in &hits {
                text.push_str(&report_line(r));
                text.push('\n');
            }
            if hits.is_empty() {
                text.push_str("no certificate at this height; this says nothing about larger heights\n");
            }
            let doc = json!({ "pair": args.pair, "m": args.m, "height": h, "n_max": args.n_max, "certificates": hits });
            Ok(Artifact::new(doc, &["candidate", "implied_polynomial", "verdict"], rows, text))
        }
        (None, Some(c)) => {
            if c.len() != args.m + 1 {
                return Err(usage(format!("--candidate needs {} entries for m = {}", args.m + 1, args.m)));
            }
            let cand = CandidateCoefficients::new(c.clone())?;
            let rep = degree_test(&a, &b, &cand, args.n_max)?;
            let rows: Vec<Vec<String>> = rep
                .ratio_trace
                .iter()
                .map(|t| vec![t.n.to_string(), rat_cell(t.ratio.value()), ctx.decimal(t.ratio.value())])
                .collect();
            let mut text = report_line(&rep) + "\n";
            if let Some(p) = &rep.polynomial_at_limit {
                text.push_str(&format!("implied polynomial at the limit: {p}\n"));
            }
            let doc = serde_json::to_value(&rep)?;
            Ok(Artifact::new(doc, &["n", "ratio", "decimal"], rows, text))
        }
        _ => Err(usage("give exactly one of --height or --candidate")),
    }
}

fn clearing(c: ClearingArg) -> Clearing {
    match c {
        ClearingArg::Unit => Clearing::Unit,
        ClearingArg::LcmPower(factor, exponent) => Clearing::LcmPower { factor, exponent },
    }
}

pub fn criterion(ctx: &Context, args: &CriterionArgs) -> Result<Artifact, CliError> {
    if args.n_max < 2 {
        return Err(usage("--n-max must be at least 2"));
    }
    let params = CriterionParams {
        k: args.k,
        delta: args.delta.clone(),
        d_seq: clearing(args.d),
        e_seq: clearing(args.e),
        eps: args.eps.clone(),
    };
    let pair = NamedPair::get(args.pair);
    let (a, b) = ctx.pair(args.pair, args.n_max)?;
    let rep = check_criterion(&pair.recurrence, &a, &b, &params, args.n_max)?;
    let rows: Vec<Vec<String>> = rep
        .growth
        .iter()
        .map(|g| {
            let integ = rep.integrality.iter().find(|r| r.m == g.n);
            let decay = rep.decay.iter().find(|r| r.m == g.n);
            vec![
                g.n.to_string(),
                ctx.decimal(&g.margin),
                g.holds.to_string(),
                integ.map_or(String::new(), |r| (r.d_times_a && r.e_times_b).to_string()),
                decay.map_or(String::new(), |r| format!("{:.6}", r.log10)),
            ]
        })
        .collect();
    let mut text = format!("pair {}, k = {}, n <= {}\n", args.pair, args.k, args.n_max);
    text.push_str(&format!(
        "c_n > 0: {}\n",
        rep.first_c_nonpositive.map_or("yes".to_string(), |n| format!("no (n = {n})"))
    ));
    text.push_str(&format!(
        "sum 1/c^k converges: {}\n",
        rep.summability.symbolic.map_or("undecided".to_string(), |v| v.to_string())
    ));
    let fails = rep.growth.iter().filter(|g| !g.holds).count();
    text.push_str(&format!("growth margin fails at {fails} of {} indices\n", rep.growth.len()));
    text.push_str(&format!(
        "decay trace strictly decreasing from m = {}, trending down: {}\n",
        rep.decay_strictly_decreasing_from.map_or("-".to_string(), |m| m.to_string()),
        rep.decay_trending_down
    ));
    text.push_str(&match &rep.verdict {
        CriterionVerdict::AllConditionsObserved => "all conditions observed on the range\n".to_string(),
        CriterionVerdict::Violation { condition, index } => format!(
            "first violation: {condition:?}{}\n",
            index.map_or(String::new(), |n| format!(" at {n}"))
        ),
    });
    let doc = serde_json::to_value(&rep)?;
    Ok(Artifact::new(doc, &["n", "growth_margin", "growth_holds", "integral", "decay_log10"], rows, text))
}

/// Correct decimals of `approx` against `reference`, or a lower bound
/// when the enclosure is tighter than the reference itself.
fn digits_against(approx: &BoundedValue, reference: &BoundedValue) -> Result<u32, CliError> {
    let floor = reference.radius() * Rational::from_integer(10.into());
    if approx.radius().is_positive() && *approx.radius() < floor {
        let widened = BoundedValue::new(approx.value().clone(), floor, approx.digits());
        return Ok(correct_digits(&widened, reference)?);
    }
    Ok(correct_digits(approx, reference)?)
}

pub fn series(ctx: &Context, args: &SeriesArgs) -> Result<Artifact, CliError> {
    let (value, reference, label) = match args.name {
        SeriesName::Zeta3Accel => (zeta3_accel(args.terms)?, Some(reference_zeta(3, REFERENCE_DIGITS)?), "zeta3-accel"),
        SeriesName::Zeta3Apery => (zeta3_apery_series(args.terms)?, Some(reference_zeta(3, REFERENCE_DIGITS)?), "zeta3-apery"),
        SeriesName::Zeta3Pow | SeriesName::Zeta2Pow => {
            let (variant, s) =
                if args.name == SeriesName::Zeta3Pow { (Variant::Zeta3, 3) } else { (Variant::Zeta2, 2) };
            let spec = PowerSeriesSpec::builtin(variant, args.m)?;
            let reference = reference_zeta(s, REFERENCE_DIGITS)?.pow(args.m);
            let label = if s == 3 { "zeta3-pow" } else { "zeta2-pow" };
            (power_series_eval(&spec, args.terms)?, Some(reference), label)
        }
        SeriesName::Limit => {
            let pair = NamedPair::get(args.pair);
            let (a, _) = ctx.pair(args.pair, args.terms as i64 + 6)?;
            let ls = generic_limit_series(&a, &pair.b_initial[0], &pair.b_initial[1], args.terms as i64)?;
            let value = ls
                .bounded(ctx.digits)
                .ok_or_else(|| CliError::Verification("no tail certificate for this series".into()))?;
            let reference = match args.pair {
                PairName::Apery3 => Some(reference_zeta(3, REFERENCE_DIGITS)?),
                PairName::Apery2 => Some(reference_zeta(2, REFERENCE_DIGITS)?),
                _ => None,
            };
            (value, reference, "limit")
        }
    };
    let value = value.with_digits(ctx.digits);
    let digits = reference.as_ref().map(|r| digits_against(&value, r)).transpose()?;
    let mut doc = json!({
        "name": label,
        "terms": args.terms,
        "value": value.value_decimal(),
        "radius": value.radius_sci(),
        "correct_digits_vs_reference": digits,
    });
    if matches!(args.name, SeriesName::Zeta3Pow | SeriesName::Zeta2Pow) {
        doc["m"] = json!(args.m);
    }
    if args.name == SeriesName::Limit {
        doc["pair"] = json!(args.pair);
    }
    let digits_cell = digits.map_or(String::new(), |d| d.to_string());
    let text = format!(
        "{label} with {} terms: {value}\ncorrect decimals against the reference: {}\n",
        args.terms,
        if digits_cell.is_empty() { "no reference" } else { &digits_cell }
    );
    let rows = vec![vec![label.to_string(), args.terms.to_string(), value.value_decimal(), value.radius_sci(), digits_cell]];
    Ok(Artifact::new(doc, &["name", "terms", "value", "radius", "correct_digits_vs_reference"], rows, text))
}

pub fn verify(args: &VerifyArgs) -> Result<Artifact, CliError> {
    if args.n_max < 10 {
        return Err(usage("--n-max must be at least 10"));
    }
    let start = Instant::now();
    let rep = verify_all(args.n_max);
    for c in &rep.checks {
        eprintln!("{:>8} ms  {}", c.millis, c.id);
    }
    eprintln!("{:>8} ms  total", start.elapsed().as_millis());
    let rows: Vec<Vec<String>> = rep
        .checks
        .iter()
        .map(|c| {
            let kind = format!("{:?}", c.kind).to_lowercase();
            vec![c.id.clone(), kind, if c.passed { "pass" } else { "fail" }.to_string(), c.detail.clone()]
        })
        .collect();
    let mut text = String::new();
    for c in &rep.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{tag}  {:<32} {}\n", c.id, c.detail));
    }
    text.push_str(&format!(
        "identities hold: {}; published claims reproduced: {}\n",
        rep.identities_hold, rep.claims_reproduced
    ));
    let failure = (!rep.identities_hold).then(|| "an exact identity failed".to_string());
    let doc = serde_json::to_value(&rep)?;
    Ok(Artifact::new(doc, &["id", "kind", "result", "detail"], rows, text).failing_if(failure))
}
