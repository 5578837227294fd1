//! The `qdc` binary end to end.

use std::process::Command;

fn qdc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdc"))
        .args(args)
        .env_remove("QDC_DEFAULT_RMATRIX")
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn d_squared_is_zero() {
    let (code, out, _) = qdc(&["eval", "d(d(t[1,2]))"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "0");
}

#[test]
fn d_of_generator_expands_in_w_basis() {
    let (code, out, _) = qdc(&["eval", "d(t[1,1])"]);
    assert_eq!(code, 0);
    assert!(out.contains("in w basis:"), "{}", out);
    assert!(out.contains("-q*t[1,2] * w[1,2]"), "{}", out);
}

#[test]
fn unknown_generator_is_an_error() {
    let (code, _, err) = qdc(&["eval", "t[1,3]"]);
    assert_ne!(code, 0);
    assert!(err.contains("unknown symbol `t[1,3]`"), "{}", err);
}

#[test]
fn syntax_error_reports_position() {
    let (code, _, err) = qdc(&["eval", "t[1,1] * "]);
    assert_ne!(code, 0);
    assert!(err.contains("position 9"), "{}", err);
}

#[test]
fn grade_cap_is_enforced() {
    let (code, _, err) = qdc(&["--cap", "2", "eval", "w[1,2] /\\ w[2,1] /\\ X"]);
    assert_ne!(code, 0);
    assert!(err.contains("exceeds"), "{}", err);
}

#[test]
fn cartan_suite_exits_zero() {
    let (code, out, _) = qdc(&["check", "--suite", "cartan", "--degree", "2"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("[PASS] anticommute-trace"));
}

#[test]
fn bicovariance_suite_reports_lplus_failure() {
    let (code, out, _) = qdc(&["check", "--suite", "bicovariance", "--degree", "2", "--format", "structured"]);
    assert_ne!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let failing: Vec<&str> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail" && r["informative"] == false)
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["rewrite-invariance-lplus", "rewrite-invariance-lminus"]);
}

#[test]
fn bicomplex_grid_structured() {
    let (code, out, _) = qdc(&["bicomplex", "--format", "structured"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["grade_dims"], serde_json::json!([1, 4, 6, 4]));
}

#[test]
fn maps_round_trip() {
    let (code, out, _) = qdc(&["maps", "--degree", "2"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("f00 = counit"));
}

#[test]
fn init_writes_descriptor() {
    let path = std::env::temp_dir().join(format!("qdc-init-{}.json", std::process::id()));
    let (code, _, _) = qdc(&["--f00", "counit", "init", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(doc["descriptor"]["rank"], 4);
    assert_eq!(doc["descriptor"]["f00"], "counit");
}

#[test]
fn perturbed_rmatrix_is_rejected_through_env() {
    let cfg = include_str!("../../../configs/sl2.toml").replace("[2, 2, 2, 2, \"q\"]", "[2, 2, 2, 2, \"q + 1\"]");
    let path = std::env::temp_dir().join(format!("qdc-bad-{}.toml", std::process::id()));
    std::fs::write(&path, cfg).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qdc"))
        .args(["relations"])
        .env("QDC_DEFAULT_RMATRIX", &path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Yang-Baxter"));
}
