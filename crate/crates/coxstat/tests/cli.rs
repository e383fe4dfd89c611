use std::process::Command;

use coxstat::cli::run;
use coxstat::ingest::{ingest_str, Format};
use coxstat_core::elements::ClassicalGroup;
use coxstat_core::{ExactPolynomial, Statistic};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("coxstat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn gf_des_a2() {
    assert_eq!(json(&["gf", "--group", "A2", "--stat", "des"]), serde_json::json!(["1", "4", "1"]));
}

#[test]
fn gf_inv_product() {
    let v = json(&["gf", "--group", "A1xI2(3)", "--stat", "inv"]);
    assert_eq!(v, serde_json::json!(["1", "3", "4", "3", "1"]));
}

#[test]
fn moments_e6() {
    let v = json(&["moments", "--group", "E6", "--stat", "inv"]);
    assert_eq!(v["mean"], "18");
    assert_eq!(v["variance"], "29");
}

#[test]
fn empty_group_is_a_usage_error() {
    let (code, _, err) = call(&["gf", "--group", "", "--stat", "inv"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(call(&["frobnicate"]).0, 2);
}

#[test]
fn e8_enumeration_is_refused() {
    let (code, _, err) = call(&["enumerate", "--group", "E8"]);
    assert_ne!(code, 0);
    assert!(!err.is_empty());
}

#[test]
fn gf_output_reads_back_as_histogram() {
    let (_, out, _) = call(&["gf", "--group", "B3", "--stat", "des"]);
    let doc = format!("{{\"statistic\": \"des\", \"histogram\": {{\"3\": {out}}}}}");
    let ds = ingest_str(&doc, Format::HistogramJson, "x").unwrap();
    let b3 = ClassicalGroup::new(coxstat_core::elements::ClassicalType::B, 3);
    assert_eq!(ds.histogram(3).unwrap(), ExactPolynomial::from_u64(&b3.tally(Statistic::Des).unwrap()));
}

#[test]
fn interp_recovers_des_variance() {
    let dir = tempfile::tempdir().unwrap();
    let mut values = Vec::new();
    for n in 2..=7usize {
        let g = ClassicalGroup::new(coxstat_core::elements::ClassicalType::A, n);
        let tally = g.tally(Statistic::Des).unwrap();
        let list: Vec<String> = tally
            .iter()
            .enumerate()
            .flat_map(|(k, &c)| std::iter::repeat_n(k.to_string(), c as usize))
            .collect();
        values.push(format!("\"{n}\": [{}]", list.join(",")));
    }
    let path = dir.path().join("des.json");
    std::fs::write(&path, format!("{{\"statistic\": \"des\", \"values\": {{{}}}}}", values.join(","))).unwrap();
    let v = json(&["interp", "--input", path.to_str().unwrap(), "--target", "variance"]);
    let formulas: Vec<&str> = v["formulas"].as_array().unwrap().iter().map(|f| f["formula"].as_str().unwrap()).collect();
    assert!(formulas.contains(&"(n + 1)/12"), "{formulas:?}");
    assert_eq!(v["rows"][0]["n"], 2);
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_coxstat"))
        .args(["gf", "--group", "I2(5)", "--stat", "des"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, serde_json::json!(["1", "8", "1"]));
}
