use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois-cremona")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("galois-cremona-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_builtins_exit_zero() {
    for name in ["cubic-omega", "cubic-char3", "quartic-i", "quintic-zeta5"] {
        let o = cli(&["verify", name]);
        assert_eq!(code(&o), 0, "{name}: {}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn quartic_report_separates_jonquieres_from_cremona() {
    let o = cli(&["--json", "verify", "quartic-i"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("\"jonquieres\": false,\n      \"cremona\": true"), "{text}");
    let v = json(&o);
    assert_eq!(v["degree"], 4);
    assert_eq!(v["galois"], true);
    let g = v["extensions"].as_array().unwrap().iter().find(|e| e["name"] == "g").unwrap();
    assert_eq!(g["verdict"], "cremona_only");
}

#[test]
fn quintic_report_lists_only_the_identity() {
    let v = json(&cli(&["--json", "verify", "quintic-zeta5"]));
    assert_eq!(v["extendable_elements"], serde_json::json!(["identity"]));
    assert_eq!(v["group_order"], 5);
}

#[test]
fn conic_from_an_outer_point() {
    let path = temp_file("conic.json", r#"{"field": {"kind": "rational"}, "curve": {"implicit": "X^2 - Y*Z"}}"#);
    let o = cli(&["--json", "galois", "test", path.to_str().unwrap(), "--point", "1,0,0"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!((v["degree"].clone(), v["galois"].clone()), (serde_json::json!(2), serde_json::json!(true)));
    let ext = v["extensions"].as_array().unwrap();
    assert_eq!(ext.len(), 2);
    assert!(ext.iter().all(|e| e["verdict"] == "jonquieres"));
}

#[test]
fn extend_single_element() {
    let v = json(&cli(&["--json", "galois", "extend", "quartic-i", "--generator", "2"]));
    let ext = v["extensions"].as_array().unwrap();
    assert_eq!(ext.len(), 1);
    assert_eq!(ext[0]["element"], 2);
    assert_eq!(code(&cli(&["galois", "extend", "quartic-i", "--generator", "7"])), 2);
}

#[test]
fn reduce_replays_the_chain() {
    let o = cli(&["--json", "cremona", "reduce", "quartic-i"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["chain"]["end"], "X*Z - Y^2");
    assert_eq!(v["pairing"]["pairing"], -2);
    assert_eq!(code(&cli(&["cremona", "reduce", "cubic-omega"])), 2);
}

#[test]
fn curve_info_reports_both_multiplicities() {
    let v = json(&cli(&["--json", "curve", "info", "quintic-zeta5", "--point", "1,0,0"]));
    assert_eq!(v["curve"]["degree"], 7);
    assert_eq!(v["curve"]["center_multiplicity"], 2);
    assert_eq!(v["checks"][0]["passed"], true);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&cli(&["verify", "no-such-scenario"])), 2);
    assert_eq!(code(&cli(&["frobnicate"])), 2);
    let bad = temp_file("bad.json", r#"{"field": {"kind": "rational"}, "curve": {"implicit": "X^2 - Y*Z"}, "point": [0, 0, 0]}"#);
    let o = cli(&["galois", "test", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a projective point"));
    let malformed = temp_file("malformed.json", "{ not json");
    assert_eq!(code(&cli(&["verify", malformed.to_str().unwrap()])), 2);
}

#[test]
fn failed_expectation_exits_one() {
    let text = include_str!("../../core/scenarios/cubic-omega.json").replace("\"degree\": 3", "\"degree\": 4");
    assert!(text.contains("\"degree\": 4"));
    let path = temp_file("wrong.json", &text);
    assert_eq!(code(&cli(&["verify", path.to_str().unwrap()])), 1);
}

#[test]
fn timeout_is_undetermined() {
    assert_eq!(code(&cli(&["--timeout", "0", "verify", "quintic-zeta5"])), 3);
}

#[test]
fn reports_are_byte_identical() {
    let a = cli(&["--json", "--seed", "5", "verify", "cubic-char3"]);
    let b = cli(&["--json", "--seed", "5", "verify", "cubic-char3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 5);
    assert!(json(&a).get("timings").is_none());
    assert!(json(&cli(&["--json", "--timings", "verify", "cubic-char3"]))["timings"].is_array());
}
