use std::path::Path;
use std::process::{Command, Output};

use mirabolic::twist::cg_zero_display;
use mirabolic_cli::cli::{EXIT_ERROR, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn mirabolic(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mirabolic"));
    c.args(args).env_clear();
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn exports_are_deterministic() {
    for args in [
        &["twist", "--n", "3"][..],
        &["rmatrix", "--n", "2", "--u", "1/2"],
        &["dyn-twist", "--n", "2", "--lambda", "3,-1"],
    ] {
        let a = mirabolic(args, &[]);
        let b = mirabolic(args, &[]);
        assert_eq!(a.status.code(), Some(EXIT_OK));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn rmatrix_rank_two_is_four_by_four() {
    let v = json(&mirabolic(&["rmatrix", "--n", "2"], &[]));
    assert_eq!(v["format"], 1);
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 4);
    assert!(m.iter().all(|r| r.as_array().unwrap().len() == 4));
}

#[test]
fn classical_at_zero_matches_display() {
    let v = json(&mirabolic(&["classical", "--n", "3", "--u", "0,0"], &[]));
    assert_eq!(v, cg_zero_display(3).to_json());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["twist", "--n", "2", "--u", "1", "--symbolic"][..],
        &["verify", "--suite", "nonsense"],
        &["twist", "--n", "9"],
        &["twist", "--n", "3", "--u", "1"],
        &["twist", "--n", "2", "--rep", "adjoint"],
        &["twist", "--n", "2", "--u", "hbar"],
        &["frobnicate"],
    ] {
        let o = mirabolic(args, &[]);
        assert_eq!(o.status.code(), Some(EXIT_USAGE), "{args:?}");
    }
    let o = mirabolic(&["verify", "--suite", "nonsense"], &[]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("pbw") && err.contains("all"), "{err}");
}

#[test]
fn flags_override_environment() {
    let env = [("MIRABOLIC_N", "2"), ("MIRABOLIC_U", "5")];
    let from_env = json(&mirabolic(&["rmatrix"], &env));
    let explicit = json(&mirabolic(&["rmatrix", "--n", "2", "--u", "5"], &[]));
    assert_eq!(from_env, explicit);

    let flag = json(&mirabolic(&["rmatrix", "--u", "7"], &env));
    assert_eq!(flag, json(&mirabolic(&["rmatrix", "--n", "2", "--u", "7"], &[])));

    let sym = json(&mirabolic(&["rmatrix", "--symbolic"], &env));
    assert_eq!(sym, json(&mirabolic(&["rmatrix", "--n", "2"], &[])));
}

#[test]
fn verify_reports_exit_codes() {
    let o = mirabolic(&["verify", "--suite", "gauge"], &[]);
    let r = json(&o);
    assert_eq!(r["suite"], "gauge");
    assert!(r["cases"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass" && c["millis"].is_null()));

    // the printed first-order term is a recorded failure
    let o = mirabolic(&["verify", "--suite", "dynamical", "--n", "2"], &[]);
    assert_eq!(o.status.code(), Some(EXIT_FAILED));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<&str> =
        r["cases"].as_array().unwrap().iter().filter(|c| c["verdict"] != "pass").map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(failed, ["hbar1/N=2"]);
}

#[test]
fn seed_from_flag_or_environment() {
    let a = json(&mirabolic(&["verify", "--suite", "gauge", "--seed", "1"], &[]));
    let b = json(&mirabolic(&["verify", "--suite", "gauge"], &[("MIRABOLIC_SEED", "1")]));
    assert_eq!(a, b);
    assert_eq!(a["config"]["seed"], 1);
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn gauge_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.json");
    let o = mirabolic(&["rmatrix", "--n", "2", "--u", "3", "--out", r.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(o.stdout.is_empty());
    let r = r.to_string_lossy().into_owned();

    let id = write(dir.path(), "id.json", &serde_json::json!({ "matrix": [["1", "0"], ["0", "1"]] }));
    let o = mirabolic(&["gauge-check", "--n", "2", "--s", &id, "--r1", &r, "--r2", &r], &[]);
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");

    let s = write(dir.path(), "s.json", &serde_json::json!({ "matrix": [["1", "lambda1"], ["0", "1"]] }));
    let o = mirabolic(&["gauge-check", "--n", "2", "--s", &s, "--r1", &r, "--r2", &r], &[]);
    assert_eq!(o.status.code(), Some(EXIT_FAILED));

    let o = mirabolic(&["gauge-check", "--n", "2", "--s", "/nonexistent.json", "--r1", &r, "--r2", &r], &[]);
    assert_eq!(o.status.code(), Some(EXIT_ERROR));
}
