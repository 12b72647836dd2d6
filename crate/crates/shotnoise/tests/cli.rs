use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn shotnoise(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shotnoise"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .unwrap()
}

fn write_spec(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap_or_else(|_| panic!("{}", String::from_utf8_lossy(&out.stderr)))
}

const EXP_GAMMA: &str = r#"{"command": "sample", "n": 5000, "seed": 3,
    "model": {"intensity": 2, "jumps": {"kind": "exponential", "params": {"beta": 1}},
              "response": {"kind": "exponential", "omega": 1}}}"#;

#[test]
fn schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"command": "sample", "bogus": 1}"#,
        r#"{"command": "sample", "n": 0}"#,
        r#"{"command": "sample"}"#,
        r#"{"command": "sample", "model": {"intensity": 1,
            "jumps": {"kind": "gamma", "params": {"rho": 1}},
            "response": {"kind": "exponential", "omega": 1}}}"#,
        r#"{"command": "diagnose", "law": {"kind": "no_such_law"}}"#,
        "not json",
    ];
    for (i, text) in cases.iter().enumerate() {
        let spec = write_spec(dir.path(), &format!("s{i}.json"), text);
        let out = shotnoise(&["sample", "--spec", &spec], "1");
        assert_eq!(out.status.code(), Some(2), "{text}");
        assert_eq!(stderr_json(&out)["error"], "schema");
    }
    assert_eq!(shotnoise(&["verify", "no-such-scenario"], "1").status.code(), Some(2));
}

#[test]
fn divergent_model_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "div.json",
        r#"{"command": "sample", "model": {"intensity": 1,
            "jumps": {"kind": "log_pareto"}, "response": {"kind": "exponential", "omega": 1}}}"#,
    );
    let out = shotnoise(&["sample", "--spec", &spec], "1");
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stderr_json(&out)["error"], "divergent");
}

#[test]
fn numeric_failure_exits_3_with_payload() {
    // a stable law is not a shot-noise law at any rate: the identified jump
    // transform leaves [0, 1]
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "num.json",
        r#"{"command": "identify-jumps", "rho": 0.2,
            "law": {"kind": "positive_stable", "params": {"rho": 0.7}}}"#,
    );
    let out = shotnoise(&["identify-jumps", "--spec", &spec], "1");
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let payload = stderr_json(&out);
    assert_eq!(payload["error"], "numeric");
    assert!(payload["detail"].is_string());
}

#[test]
fn degenerate_zero_jumps_give_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "zero.json",
        r#"{"command": "sample", "n": 100, "model": {"intensity": 1,
            "jumps": {"kind": "degenerate", "params": {"c": 0}},
            "response": {"kind": "exponential", "omega": 1}}}"#,
    );
    let out = shotnoise(&["sample", "--spec", &spec], "1");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,value"));
    let values: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 100);
    assert!(values.iter().all(|&v| v == 0.0));
}

#[test]
fn diagnose_log_cauchy_reports_slow_variation() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "lc.json", r#"{"command": "diagnose", "law": {"kind": "log_cauchy"}}"#);
    let out = shotnoise(&["diagnose", "--spec", &spec, "--format", "json"], "1");
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "NotSD_SlowVariation");
    assert_eq!(report["ci"].as_array().unwrap().len(), 2);
    assert!(report["evidence"].as_array().unwrap().iter().all(|e| e["check"].is_string()));
}

#[test]
fn verify_list_and_run() {
    let out = shotnoise(&["verify", "--list"], "1");
    assert!(out.status.success());
    let listing = String::from_utf8(out.stdout).unwrap();
    assert!(listing.lines().count() >= 12);
    assert!(listing.lines().all(|l| l.split('\t').count() == 2));
    assert!(listing.contains("gamma-sn\t"));

    let out = shotnoise(&["verify", "gamma-sn", "--format", "json"], "2");
    assert!(out.status.success());
    let result: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(result["pass"], true);
    let stats = &result["statistics"];
    assert!(stats["ks"].as_f64().unwrap() < stats["ks_bound"].as_f64().unwrap());
}

#[test]
fn output_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "g.json", EXP_GAMMA);
    let hashes: Vec<Vec<u8>> = ["1", "3", "8"]
        .iter()
        .map(|t| {
            let out = shotnoise(&["sample", "--spec", &spec], t);
            assert!(out.status.success());
            Sha256::digest(&out.stdout).to_vec()
        })
        .collect();
    assert!(hashes.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn csv_numbers_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "g.json", EXP_GAMMA);
    let csv = String::from_utf8(shotnoise(&["sample", "--spec", &spec], "1").stdout).unwrap();
    let json: Value = serde_json::from_slice(&shotnoise(&["sample", "--spec", &spec, "--format", "json"], "1").stdout).unwrap();
    let from_json: Vec<f64> = json.as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    let from_csv: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(from_csv, from_json);
}

#[test]
fn transform_tables_and_inversion() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "t.json",
        r#"{"command": "transform", "grid": {"from": 0.1, "to": 10, "points": 5},
            "transform": {"kind": "shot_noise", "rho": 2,
                          "jumps": {"kind": "law", "law": {"kind": "exponential", "params": {"beta": 1}}}}}"#,
    );
    let out = shotnoise(&["transform", "--spec", &spec, "--format", "json"], "1");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in rows.as_array().unwrap() {
        let s = row["s"].as_f64().unwrap();
        assert!((row["phi"].as_f64().unwrap() - (1.0 + s).powi(-2)).abs() < 1e-10);
    }

    let out = shotnoise(&["identify-bdlp", "--spec", &spec, "--format", "json"], "1");
    assert!(out.status.success());
    let id: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(id["violations"].as_array().unwrap().is_empty());
    // Gamma(2, 1): log Ψ(s) = −2s/(1+s)
    for row in id["table"].as_array().unwrap() {
        let s = row["s"].as_f64().unwrap();
        assert!((row["log_psi"].as_f64().unwrap() + 2.0 * s / (1.0 + s)).abs() < 1e-8);
    }

    let spec = write_spec(
        dir.path(),
        "inv.json",
        r#"{"command": "invert", "x": [1.0, 2.0],
            "law": {"kind": "gamma", "params": {"rho": 1, "beta": 1}}}"#,
    );
    let out = shotnoise(&["invert", "--spec", &spec], "1");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,cdf,precision,method"));
    for (line, x) in lines.zip([1.0f64, 2.0]) {
        let cdf: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((cdf - (1.0 - (-x).exp())).abs() < 1e-6, "{line}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "g.json", EXP_GAMMA);
    let target = dir.path().join("samples.csv");
    let out = shotnoise(&["sample", "--spec", &spec, "--out", target.to_str().unwrap()], "1");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap().lines().count(), 5001);
}
