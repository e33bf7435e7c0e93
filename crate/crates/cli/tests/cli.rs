use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run_in(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_aperylift"));
    cmd.args(args).env_remove("APERYLIFT_CACHE_DIR");
    match cache {
        Some(dir) => cmd.env("APERYLIFT_CACHE_DIR", dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(None, args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn rational(v: &Value) -> (String, String) {
    (v["num"].as_str().unwrap().to_string(), v["den"].as_str().unwrap().to_string())
}

#[test]
fn apery_csv_table() {
    let out = run(&["apery", "--variant", "zeta3", "--n", "3", "--emit", "csv", "--digits", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,a,b,b/a");
    assert_eq!(lines[1], "0,1,0,0.00000");
    assert_eq!(lines[2], "1,5,6,1.20000");
    assert_eq!(lines[3], "2,73,351/4,1.20205");
    assert_eq!(lines.len(), 5);
}

#[test]
fn apery_json_rationals_are_strings() {
    let out = run(&["apery", "--variant", "zeta2", "--n", "2", "--verify", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["closed_forms_verified"], Value::Bool(true));
    assert_eq!(rational(&doc["rows"][2]["b"]), ("125".to_string(), "4".to_string()));
    assert_eq!(rational(&doc["rows"][2]["a"]), ("19".to_string(), "1".to_string()));
}

#[test]
fn fibonacci_lift() {
    let out = run(&["lift", "--base", "fib", "--m", "2", "--n-range", "1:6", "--verify", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for row in doc["rows"].as_array().unwrap() {
        let coeffs: Vec<String> = row["coefficients"].as_array().unwrap().iter().map(|c| rational(c).0).collect();
        assert_eq!(coeffs, ["1", "-2", "-2", "1"]);
    }
    assert_eq!(doc["verification"]["nonzero"], 0);
}

#[test]
fn higher_lifts_verify() {
    let out = run(&["lift", "--base", "apery3", "--m", "3", "--n-range", "1:12", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("48 of 48 component residuals are zero"));
    let out = run(&["lift", "--base", "pell", "--m", "4", "--n-range", "1:8", "--verify", "--emit", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("n,p0,p1,p2,p3,p4,p5\n"));
}

#[test]
fn series_json_shape() {
    let out = run(&["series", "--name", "zeta3-accel", "--terms", "5", "--digits", "25", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for key in ["name", "terms", "value", "radius", "correct_digits_vs_reference"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["name"], "zeta3-accel");
    assert_eq!(doc["terms"], 5);
    let value = doc["value"].as_str().unwrap();
    assert_eq!(value.len(), "1.".len() + 25);
    assert!(value.starts_with("1.20205690315"));
    assert!(doc["correct_digits_vs_reference"].as_u64().unwrap() >= 10);
}

#[test]
fn power_and_limit_series() {
    let out = run(&["series", "--name", "zeta3-pow", "--m", "4", "--terms", "30", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["m"], 4);
    assert!(doc["value"].as_str().unwrap().starts_with("2.0878539"));

    let out = run(&["series", "--name", "limit", "--pair", "pell", "--terms", "20", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["value"].as_str().unwrap().starts_with("1.41421356"));
    assert_eq!(doc["correct_digits_vs_reference"], Value::Null);

    let out = run(&["series", "--name", "zeta2-pow", "--m", "5", "--terms", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn degree_report_and_scan() {
    let out = run(&["degree", "--pair", "pell", "--m", "2", "--candidate", "1,0,-2", "--n-max", "40", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["verdict"], "vanishing");
    assert_eq!(doc["implied_polynomial_text"], "x^2 - 2");
    assert!(doc["ratio_trace"].as_array().unwrap().len() > 30);

    let out = run(&["degree", "--pair", "apery3", "--m", "2", "--height", "3", "--n-max", "40", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["certificates"].as_array().unwrap().len(), 0);
}

#[test]
fn criterion_report() {
    let out = run(&["criterion", "--pair", "apery3", "--k", "1", "--n-max", "60", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["verdict"]["kind"], "all_conditions_observed");
    assert_eq!(doc["growth"].as_array().unwrap().len(), 60);

    let out = run(&["criterion", "--pair", "apery2", "--e", "unit", "--n-max", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("first violation: CPositive at 1"));
}

#[test]
fn custom_propagation() {
    let out = run(&["propagate", "--c", "n+1", "--b", "2n+1", "--init", "1,1/2", "--n", "4", "--emit", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // (n+1) y_{n+1} = (2n+1) y_n − n y_{n−1}: 1, 1/2, then (3/2 − 1)/2 = 1/4
    assert!(text.contains("\n2,1/4,"), "{text}");
    let out = run(&["propagate", "--c", "n+1", "--b", "2n+1", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["propagate", "--pair", "fib", "--init", "1,2,3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["lift", "--base", "nonesuch"]).status.code(), Some(1));
    assert_eq!(run(&["lift", "--n-range", "9:1"]).status.code(), Some(1));
    assert_eq!(run(&["degree", "--pair", "fib"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["degree", "--pair", "fib", "--m", "2", "--candidate", "1,-1/2,-1", "--n-max", "30", "--emit", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn cache_reuse_and_tamper_detection() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["apery", "--n", "30", "--emit", "json"];
    let fresh = run_in(Some(dir.path()), &args);
    assert_eq!(fresh.status.code(), Some(0));
    let path = dir.path().join("apery3-a.seq");
    assert!(path.exists());
    let cached = run_in(Some(dir.path()), &args);
    assert_eq!(fresh.stdout, cached.stdout);
    assert_eq!(fresh.stdout, run(&args).stdout);

    let text = std::fs::read_to_string(&path).unwrap();
    let last = text.lines().last().unwrap().to_string();
    let (idx, _) = last.split_once('\t').unwrap();
    std::fs::write(&path, text.replace(&last, &format!("{idx}\t7/1"))).unwrap();
    let tampered = run_in(Some(dir.path()), &args);
    assert_eq!(tampered.status.code(), Some(2));
}

#[test]
fn verify_all_separates_identities_from_claims() {
    let out = run(&["verify-all", "--n-max", "30", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["identities_hold"], Value::Bool(true));
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c.get("millis").is_none()));
    assert!(checks.iter().filter(|c| c["kind"] == "identity").all(|c| c["passed"] == Value::Bool(true)));
}
