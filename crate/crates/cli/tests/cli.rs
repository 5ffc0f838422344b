use std::process::{Command, Output};

use serde_json::Value;

fn spinhdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinhdet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = spinhdet(&all);
    let v = serde_json::from_slice(&out.stdout).expect("valid json on stdout");
    (out.status.code().unwrap(), v)
}

#[test]
fn unknown_subcommand_and_flag_are_usage_errors() {
    assert_eq!(spinhdet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(spinhdet(&["roots", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(spinhdet(&["roots", "--basis", "z"]).status.code(), Some(2));
    assert_eq!(spinhdet(&["--help"]).status.code(), Some(0));
}

#[test]
fn zero_denominator_names_the_argument() {
    let out = spinhdet(&["cayley", "eval", "1", "0", "0", "3/0", "0", "0", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("entries[3]"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_point_json_is_a_usage_error() {
    let out = spinhdet(&["hdet", "eval", r#"["1","2"]"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = spinhdet(&["hdet", "eval", r#"["1","2","3","4","5","6","7","x"]"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("point[7]"));
}

#[test]
fn roots_in_both_bases() {
    let (code, x) = json(&["roots", "--basis", "x"]);
    assert_eq!(code, 0);
    assert_eq!(x["count"], 240);
    assert_eq!(x["roots"][0]["coords"][0], "1");
    let (_, y) = json(&["roots", "--basis", "y"]);
    assert_eq!(y["count"], 120);
    assert!(y["forms"]
        .as_array()
        .unwrap()
        .iter()
        .all(|f| f["mult"] == 2));
}

#[test]
fn odd_power_sum_is_the_zero_polynomial() {
    let (code, v) = json(&["power-sum", "13"]);
    assert_eq!(code, 0);
    assert_eq!(v["polynomial"]["terms"].as_array().unwrap().len(), 0);
    assert_eq!(v["polynomial"]["vars"].as_array().unwrap().len(), 8);
}

#[test]
fn power_sum_verify_exit_codes() {
    let (code, v) = json(&["power-sum", "12", "--verify", "--weighting", "doubled"]);
    assert_eq!(code, 0);
    assert_eq!(v["matched"], 14);
    assert_eq!(v["scalar"], "3/512");

    let (code, v) = json(&["power-sum", "12", "--verify"]);
    assert_eq!(code, 1);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 13);

    assert_eq!(
        spinhdet(&["power-sum", "13", "--verify"]).status.code(),
        Some(2)
    );
}

#[test]
fn power_sum_coefficients_are_decimal_strings() {
    let (_, v) = json(&["power-sum", "8", "--weighting", "doubled"]);
    let terms = v["polynomial"]["terms"].as_array().unwrap();
    assert_eq!(terms[0]["exp"], serde_json::json!([8, 0, 0, 0, 0, 0, 0, 0]));
    assert!(terms.iter().all(|t| t["coeff"].is_string()));
}

#[test]
fn hdet_build_and_eval() {
    let (_, h) = json(&["hdet", "build"]);
    assert_eq!(h["scalar"], "1");
    assert_eq!(h["factors"].as_array().unwrap().len(), 120);

    let (code, v) = json(&["hdet", "eval", r#"["1","2","3","4","5","6","7","8"]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "0");

    let expected = include_str!("../../core/tests/data/hdet_powers_of_two.txt").trim();
    let (_, v) = json(&["hdet", "eval", r#"["1","2","4","8","16","32","64","128"]"#]);
    assert_eq!(v["value"], expected);
}

#[test]
fn hdet_restrict_report() {
    let (code, r) = json(&["hdet", "restrict"]);
    assert_eq!(code, 0);
    assert_eq!(r["q_factors"].as_array().unwrap().len(), 63);
    assert_eq!(r["t_factors"].as_array().unwrap().len(), 28);
    assert_eq!(r["q_multiplicity"], 2);
    assert_eq!(r["t_multiplicity"], 4);
}

#[test]
fn geometry_listings() {
    assert_eq!(
        json(&["geometry", "planes"]).1.as_array().unwrap().len(),
        14
    );
    assert_eq!(json(&["geometry", "lines"]).1.as_array().unwrap().len(), 28);
    assert_eq!(json(&["geometry", "forms"]).1["count"], 120);
    let (_, fano) = json(&["geometry", "fano", "--center", "8"]);
    assert_eq!(fano["lines"].as_array().unwrap().len(), 7);
    assert_eq!(
        spinhdet(&["geometry", "fano", "--center", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cayley_eval_and_sources() {
    let (_, ghz) = json(&["cayley", "eval", "1", "0", "0", "0", "0", "0", "0", "1"]);
    assert_eq!(ghz["value"], "1");
    let (_, half) = json(&["cayley", "eval", "-1/2", "0", "0", "0", "0", "0", "0", "1"]);
    assert_eq!(half["value"], "1/4");
    let a = json(&["cayley", "poly", "--source", "explicit"]).1;
    let b = json(&["cayley", "poly", "--source", "combinatorial"]).1;
    assert_eq!(a, b);
    assert_eq!(a["terms"].as_array().unwrap().len(), 12);
}

#[test]
fn fock_subcommands() {
    let (code, car) = json(&["fock", "car-check"]);
    assert_eq!(code, 0);
    assert_eq!(car["checks"], 49152);
    assert_eq!(json(&["fock", "spin-check"]).0, 0);

    let args = ["fock", "cartan", "1", "0", "0", "0", "0", "0", "0", "0"];
    let (_, s) = json(&args);
    let amps = s["amplitudes"].as_array().unwrap();
    assert_eq!(amps.len(), 2);
    assert!(amps.iter().all(|a| a["a"] == "4" && a["b"] == "0"));

    let printed = json(&["fock", "cartan", "0", "0", "0", "0", "0", "0", "1", "0"]).1;
    let corrected = json(&[
        "--e7-variant",
        "corrected",
        "fock",
        "cartan",
        "0",
        "0",
        "0",
        "0",
        "0",
        "0",
        "1",
        "0",
    ])
    .1;
    assert_ne!(printed, corrected);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join(format!("spinhdet-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("planes.json");
    let p = path.to_str().unwrap();
    let out = spinhdet(&["geometry", "planes", "--format", "json", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = spinhdet(&["geometry", "planes", "--format", "json"]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), direct);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn jobs_flag_does_not_change_output() {
    let one = spinhdet(&["power-sum", "12", "--jobs", "1", "--format", "json"]).stdout;
    let four = spinhdet(&["power-sum", "12", "--jobs", "4", "--format", "json"]).stdout;
    assert_eq!(one, four);
    assert_eq!(spinhdet(&["roots", "--jobs", "0"]).status.code(), Some(2));
}
