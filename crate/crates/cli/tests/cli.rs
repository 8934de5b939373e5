use std::process::{Command, Output};

use nonres::spaces::System;
use serde_json::Value;

fn nonres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonres")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_example() {
    let out = nonres(&["--json", "check", "--d", "2", "--m", "2", "--n", "1", "--poly", "1,0,1", "--poly", "1,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["family"], "Poly_C");
    assert_eq!(v["member"], false);
    assert_eq!(v["stratum"]["i"], 0);
    assert_eq!(v["stratum"]["j"], 1);
}

#[test]
fn betti_example() {
    let out = nonres(&["--json", "betti", "--space", "polyR", "--d", "4", "--m", "2", "--n", "2", "--field", "f2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let dims = v["reduced"]["F2"].as_object().unwrap();
    let expected: serde_json::Map<String, Value> =
        [("2", 1), ("4", 1), ("5", 1)].iter().map(|(k, n)| (k.to_string(), Value::from(*n))).collect();
    assert_eq!(*dims, expected);
}

#[test]
fn verify_grid_example_exits_zero() {
    let out = nonres(&["verify", "--grid", "mn in {3,4,6}; d<=20", "--field", "f2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let args = ["--json", "verify", "--grid", "mn in {3,4}; d<=10", "--field", "both"];
    let a = nonres(&args);
    let b = nonres(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["command"], args.join(" "));
}

#[test]
fn json_outputs_round_trip() {
    let out = nonres(&["--json", "jet", "--poly=-1,0,1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let sys = System::parse_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(sys.space().m, 2);

    let inline = r#"{"family":"Poly_R","d":2,"m":2,"n":1,"polys":[["-1","0","1"],["-4","0","1"]]}"#;
    let out = nonres(&["--json", "check", "--system", inline]);
    let v = json_of(&out);
    assert_eq!(v["member"], true);
    assert!(v["stratum"].is_null());

    for args in [
        vec!["--json", "e1", "--d", "6", "--m", "1", "--n", "3"],
        vec!["--json", "betti", "--model", "real", "--d", "4", "--m", "2", "--n", "2", "--qmax", "12"],
    ] {
        let out = nonres(&args);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), text.trim_end());
    }
}

#[test]
fn scan_reports_degree_parity() {
    let out = nonres(&[
        "--json", "scan", "--family", "Q_R", "--d", "1", "--m", "3", "--n", "1", "--poly", "0,1", "--poly=-1,1", "--poly=-2,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["class"], 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nonres(&["bogus"]).status.code(), Some(2));
    assert_eq!(nonres(&["check", "--d", "2", "--m", "2", "--poly", "1,0"]).status.code(), Some(2));
    assert_eq!(nonres(&["verify", "--d", "4"]).status.code(), Some(2));
    // stochastic commands need an explicit seed in JSON mode
    let out = nonres(&["--json", "pi0", "--d", "3", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "usage");
}

#[test]
fn core_input_errors_carry_json_diagnostics() {
    let out = nonres(&["--json", "e1", "--d", "4", "--m", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "unsupported-parameters");
}

#[test]
fn seeded_oracle_runs_replay() {
    let args = ["--json", "oracle", "--kind", "planted", "--d", "4", "--m", "1", "--n", "2", "--trials", "200", "--seed", "9"];
    let a = nonres(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, nonres(&args).stdout);
    let v = json_of(&a);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn pi0_small_degree() {
    let out = nonres(&["--json", "pi0", "--d", "4", "--trials", "2000", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["missing_labels"].as_array().unwrap().len(), 0);
    assert_eq!(v["paths"]["violations"], 0);
}
