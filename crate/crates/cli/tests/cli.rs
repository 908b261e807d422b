use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hecke-trace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn trace_a1_box_ten_agrees() {
    let out = run(&["trace", "--datum", "A1", "--box", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["records"].as_array().unwrap().len(), 21);
    assert_eq!(v["mismatches"], 0);
}

#[test]
fn trace_outside_negative_cone_is_zero() {
    let out = run(&["trace", "--datum", "A2", "--x", "1,0", "--x", "-1,2"]);
    assert_eq!(out.status.code(), Some(0));
    for r in json(&out)["records"].as_array().unwrap() {
        assert_eq!(r["in_negative_cone"], false);
        assert_eq!(r["direct"]["text"], "0");
    }
}

#[test]
fn trace_rational_values() {
    let out = run(&["trace", "--datum", "A1", "--x", "-2", "--mode", "rational"]);
    // (q − 1)(q − q⁻¹)/(q + 1) at q = 4
    assert_eq!(json(&out)["records"][0]["value"], "9/4");
}

#[test]
fn series_a1_support_and_determinism() {
    let a = run(&["series", "--datum", "A1", "--box", "6"]);
    assert_eq!(a.status.code(), Some(0));
    let xs: Vec<i64> = json(&a)["records"].as_array().unwrap().iter().map(|r| r["x"][0].as_i64().unwrap()).collect();
    assert_eq!(xs, vec![0, -2, -4, -6]);
    let b = bin().args(["series", "--datum", "A1", "--box", "6"]).env("HECKE_TRACE_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_named_suites() {
    for (datum, suite, radius) in [("B2", "quadratic", "2"), ("BnCn(2)", "lusztig", "3"), ("A2", "braid-intertwiner", "2")] {
        let out = run(&["verify", "--datum", datum, "--suite", suite, "--box", radius]);
        assert_eq!(out.status.code(), Some(0), "{datum} {suite}");
        assert_eq!(json(&out)["suites"][0]["pass"], true);
    }
}

#[test]
fn verify_default_suites_numeric() {
    let out = run(&["verify", "--datum", "BnCn(2)", "--mode", "rational", "--box", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    assert!(v["suites"].as_array().unwrap().iter().any(|s| s["suite"] == "macdonald"));
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn malformed_labels() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "[1, 2");
    assert_eq!(run(&["trace", "--labels", &bad]).status.code(), Some(2));
    let missing = write(dir.path(), "missing.json", r#"{"0": "a"}"#);
    let out = run(&["trace", "--datum", "A1-root", "--labels", &missing]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("class 1"));
    let not_square = write(dir.path(), "ns.json", r#"{"0": "2"}"#);
    assert_eq!(run(&["trace", "--labels", &not_square, "--mode", "rational"]).status.code(), Some(2));
}

#[test]
fn shared_label_variable() {
    let dir = tempfile::tempdir().unwrap();
    let eq = write(dir.path(), "eq.json", r#"{"0": "a", "1": "a"}"#);
    let out = run(&["trace", "--datum", "A1-root", "--labels", &eq, "--box", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["vars"], serde_json::json!(["a"]));
}

#[test]
fn datum_from_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let desc = r#"{"rank": 2, "pairing": [[1,0],[0,1]],
        "simple_roots": [[2,-1],[-1,2]], "simple_coroots": [[1,0],[0,1]]}"#;
    let path = write(dir.path(), "a2.json", desc);
    let out = run(&["trace", "--datum", &path, "--box", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["datum"], "a2");
}

#[test]
fn spherical_pole_and_modes() {
    let out = run(&["spherical", "--datum", "A1", "--mode", "rational", "--t=-1"]);
    assert_eq!(out.status.code(), Some(1));
    let line: Value = serde_json::from_slice(out.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(line["pole"], true);

    let out = run(&["spherical", "--datum", "A2", "--mode", "rational", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    for l in String::from_utf8(out.stdout).unwrap().lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["agree"], true);
        assert_eq!(v["macdonald"], v["direct"]);
    }

    let out = run(&["spherical", "--datum", "B2", "--mode", "complex", "--t", "0.5,0.2", "--t", "-2"]);
    assert_eq!(out.status.code(), Some(0));

    assert_eq!(run(&["spherical", "--datum", "A2"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("presets.json");
    let out = run(&["presets", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    assert_eq!(v["presets"].as_array().unwrap().len(), 10);
}
