use std::process::Command;

use serde_json::Value;

use cuspforge_cli::{run, OutputEnvelope};

fn ok(args: &[&str]) -> Value {
    let (code, out) = run(std::iter::once("cuspforge").chain(args.iter().copied()));
    assert_eq!(code, 0, "{args:?}: {out}");
    let env: Value = serde_json::from_str(&out).unwrap();
    env["result"].clone()
}

fn err(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(std::iter::once("cuspforge").chain(args.iter().copied()));
    (code, serde_json::from_str(&out).unwrap())
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cuspforge"))
}

#[test]
fn genus_of_x1_20() {
    let r = ok(&["genus", "--level", "20", "--gamma1"]);
    assert_eq!(r["g"], 3);
    assert_eq!(r["mu"], 144);
    assert_eq!(r["nu_inf"], 20);
    assert_eq!(r["nu2"], 0);
    assert_eq!(r["nu3"], 0);
    assert_eq!(ok(&["genus", "--level", "64", "--gamma0"])["g"], 3);
    assert_eq!(ok(&["genus", "--level", "20", "--delta-d", "2"])["g"], 1);
    assert_eq!(ok(&["genus", "--level", "20", "--gens", "9"])["g"], 1);
}

#[test]
fn verdict_at_18_is_fact_table() {
    let r = ok(&["verdict", "x1", "--level", "18", "--d", "3"]);
    assert_eq!(r["status"], "NotWeierstrass");
    assert_eq!(r["N"], 18);
    let rules: Vec<&str> = r["certificate"].as_array().unwrap().iter().map(|s| s["rule"].as_str().unwrap()).collect();
    assert_eq!(rules.last(), Some(&"FactTable"));
    assert!(r.get("weight").is_none());
}

#[test]
fn verdict_at_20_has_weight_two() {
    let r = ok(&["verdict", "x1", "--level", "20", "--d", "10"]);
    assert_eq!(r["status"], "Weierstrass");
    assert_eq!(r["weight"], 2);
}

#[test]
fn verdict_x0() {
    assert_eq!(ok(&["verdict", "x0", "--p", "2", "--m", "16"])["status"], "Weierstrass");
    assert_eq!(ok(&["verdict", "x0", "--p", "3", "--m", "9"])["status"], "NotWeierstrass");
    assert_eq!(ok(&["verdict", "x0", "--p", "2", "--m", "77"])["status"], "Unknown");
    let (code, e) = err(&["verdict", "x0", "--p", "4", "--m", "4"]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "NotPrime");
}

#[test]
fn survey_to_100() {
    let r = ok(&["survey", "x1", "--max", "100"]);
    let bad: Vec<u64> = r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|row| row["status"] == "NotWeierstrass")
        .map(|row| row["N"].as_u64().unwrap())
        .collect();
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|&n| n == 18));
}

#[test]
fn survey_output_is_deterministic() {
    let a = run(["cuspforge", "survey", "x1", "--max", "120", "--jobs", "1"]);
    let b = run(["cuspforge", "survey", "x1", "--max", "120", "--jobs", "4"]);
    let c = run(["cuspforge", "survey", "x1", "--max", "120", "--jobs", "4"]);
    assert_eq!(a, b);
    assert_eq!(b, c);
    let tsv = run(["cuspforge", "survey", "x1", "--max", "40", "--format", "tsv"]).1;
    assert!(tsv.starts_with("N\td\treduced_d\te\tstatus\tweight\trule\n"));
    assert!(tsv.contains("18\t3\t3\t3\tNotWeierstrass\t\tFactTable\n"));
}

#[test]
fn jobs_from_environment() {
    let out = bin().args(["survey", "x1", "--max", "30"]).env("CUSPFORGE_JOBS", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(["survey", "x1", "--max", "30"]).env("CUSPFORGE_JOBS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(e["error"]["kind"], "BadFlag");
}

#[test]
fn cusps_and_orbits() {
    let r = ok(&["cusps", "--level", "20", "--group", "gamma1"]);
    assert_eq!(r["count"], 20);
    let irregular = r["cusps"].as_array().unwrap().iter().filter(|c| c["irregular"] == true).count();
    assert_eq!(irregular, 4);
    assert_eq!(ok(&["cusps", "--level", "12", "--group", "gamma0"])["count"], 6);
    let r = ok(&["cusps", "--level", "20", "--group", "delta", "--delta-d", "2"]);
    assert_eq!(r["count"], 12);
    let tsv = run(["cuspforge", "cusps", "--level", "8", "--format", "tsv"]).1;
    assert_eq!(tsv.lines().count(), 1 + 6);

    let r = ok(&["orbits", "--level", "20"]);
    let orbit = r["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o.as_array().unwrap().iter().any(|k| k == "(1:10)"))
        .unwrap();
    let mut keys: Vec<&str> = orbit.as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    keys.sort();
    assert_eq!(keys, ["(1:10)", "(1:2)", "(1:6)", "(3:10)"]);
    let (code, e) = err(&["cusps", "--level", "20", "--group", "delta"]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "BadFlag");
}

#[test]
fn eta_series_and_divisors() {
    let r = ok(&["eta", "series", "--level", "20", "--r", "1", "--terms", "5"]);
    assert_eq!(r["leading_exponent"], "143/120");
    assert_eq!(r["terms"][0]["coeff"], "1");

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(&f, r#"{"level": 20, "exponents": {"2":1, "4":2, "6":2, "1":-2, "8":-1, "9":-2}}"#).unwrap();
    let r = ok(&["eta", "div", "--spec", f.to_str().unwrap()]);
    assert_eq!(r["divisor"]["degree"], 0);
    assert_eq!(r["pole_part"], serde_json::json!([{"cusp": "(1:10)", "order": 3}]));

    let bad = dir.path().join("e1.json");
    std::fs::write(&bad, r#"{"level": 20, "exponents": {"1": 1}}"#).unwrap();
    let (code, e) = err(&["eta", "div", "--spec", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "NotModular");

    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "not json").unwrap();
    assert_eq!(err(&["eta", "div", "--spec", junk.to_str().unwrap()]).1["error"]["kind"], "BadSpec");
    assert_eq!(err(&["eta", "div", "--spec", "/nonexistent/q.json"]).1["error"]["kind"], "Io");
    assert_eq!(err(&["eta", "series", "--level", "20", "--r", "40"]).1["error"]["kind"], "RCongruentZero");
}

#[test]
fn certify_level_20() {
    let r = ok(&["certify", "x1-20"]);
    assert_eq!(r["gaps"]["gaps"], serde_json::json!([1, 2, 5]));
    assert_eq!(r["gaps"]["weight"], 2);
    assert_eq!(r["verdict"]["status"], "Weierstrass");
}

#[test]
fn errors_are_structured() {
    let (code, e) = err(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "UnknownCommand");
    let (code, e) = err(&["genus", "--level", "x"]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "BadFlag");
    let (code, e) = err(&["genus", "--level", "0"]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "InvalidLevel");
    let (code, e) = err(&["verdict", "x1", "--level", "20", "--d", "5"]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "NotIrregular");
}

#[test]
fn envelope_round_trips() {
    for args in [
        vec!["genus", "--level", "36", "--gamma0"],
        vec!["verdict", "x1", "--level", "20", "--d", "2"],
        vec!["certify", "x1-20"],
    ] {
        let (_, out) = run(std::iter::once("cuspforge").chain(args.iter().copied()));
        let env: OutputEnvelope = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&env).unwrap() + "\n";
        assert_eq!(again, out);
    }
}

#[test]
fn binary_exit_codes() {
    let out = bin().args(["genus", "--level", "20"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(["verdict", "x1", "--level", "12", "--d", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("--version").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
