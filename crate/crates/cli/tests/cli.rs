use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn covercert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covercert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn bounds_sweep_has_99_rows() {
    let o = covercert(&["bounds", "--n-max", "100"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    for col in ["n", "r_n", "bound_log", "borsuk_log"] {
        assert!(headers.iter().any(|h| h == col), "{col}");
    }
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 99);
    assert_eq!(&rows[0][0], "2");
    assert_eq!(&rows[98][0], "100");
}

#[test]
fn bounds_single_n_matches_library() {
    let o = covercert(&["bounds", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    let lib = covercert_core::bounds::theorem_lower_bound(4).unwrap();
    assert_eq!(v["theorem_lower_bound"].as_f64().unwrap(), lib);
    assert!((lib - 0.0568).abs() < 5e-4);
    assert_eq!(v["config"]["lambda"], 2.6);
}

#[test]
fn bounds_config_errors_exit_2() {
    assert_eq!(code(&covercert(&["bounds", "--n", "4", "--lambda", "50"])), 2);
    assert_eq!(code(&covercert(&["bounds", "--n", "4", "--lambda", "0"])), 2);
    assert_eq!(code(&covercert(&["bounds"])), 2);
    assert_eq!(code(&covercert(&["bounds", "--n", "1"])), 2);
}

#[test]
fn randomized_commands_require_seed() {
    assert_eq!(code(&covercert(&["witness"])), 2);
    assert_eq!(code(&covercert(&["jung-check", "--n", "3"])), 2);
    assert_eq!(code(&covercert(&["audit", "--suite", "caps"])), 2);
}

#[test]
fn jung_check_reports() {
    let o = covercert(&["jung-check", "--n", "6", "--seed", "1", "--samples", "300"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rn = (6.0f64 / 14.0).sqrt();
    assert!((v["simplex_radius"].as_f64().unwrap() - rn).abs() < 1e-6);
    assert!(v["max_radius"].as_f64().unwrap() <= rn + 1e-6);
    assert_eq!(v["config"]["seed"], 1);
    let single = json(&covercert(&["jung-check", "--n", "2", "--seed", "1", "--samples", "4", "--points", "1"]));
    assert_eq!(single["max_radius"], 0.0);
    assert_eq!(code(&covercert(&["jung-check", "--n", "11", "--seed", "1"])), 2);
}

#[test]
fn audit_exit_codes() {
    let caps = covercert(&["audit", "--suite", "caps", "--seed", "3", "--samples", "20000"]);
    assert_eq!(code(&caps), 0);
    assert_eq!(json(&caps)["failures"].as_array().unwrap().len(), 0);

    let faulty = covercert(&["audit", "--suite", "cone", "--seed", "3", "--samples", "500", "--fault-injection"]);
    assert_eq!(code(&faulty), 1);
    let failures = json(&faulty)["failures"].as_array().unwrap().clone();
    assert!(!failures.is_empty());
    assert!(failures[0].as_str().unwrap().starts_with("cone/"));

    let expected = covercert(&[
        "audit",
        "--suite",
        "cone",
        "--seed",
        "3",
        "--samples",
        "500",
        "--fault-injection",
        "--expect-fail",
    ]);
    assert_eq!(code(&expected), 0);
    assert_eq!(code(&covercert(&["audit", "--suite", "cone", "--seed", "3", "--samples", "500"])), 0);
    assert_eq!(code(&covercert(&["audit", "--suite", "nope", "--seed", "3"])), 2);
    assert_eq!(code(&covercert(&["audit", "--suite", "caps", "--seed", "3", "--fault-injection"])), 2);
}

#[test]
fn cover_audit_detects_missing_rotations() {
    let o = covercert(&["audit", "--suite", "cover", "--seed", "4", "--samples", "100", "--fault-injection"]);
    assert_eq!(code(&o), 1);
    let ok = covercert(&["audit", "--suite", "cover", "--seed", "4", "--samples", "100"]);
    assert_eq!(code(&ok), 0);
}

const SMALL_WITNESS: &[&str] = &["witness", "--seed", "7", "--unit-diameter", "--eps", "0.03", "--samples", "1000"];

#[test]
fn witness_replay_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let mut args = SMALL_WITNESS.to_vec();
        args.extend(["--out", p.to_str().unwrap()]);
        assert_eq!(code(&covercert(&args)), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let cert = read_json(&a);
    assert_eq!(cert["schema_version"], 1);
    assert_eq!(cert["verdict"], true);
    assert!(cert["diam_x"].as_f64().unwrap() <= 1.0);
    assert_eq!(cert["environment"]["seed"], 7);

    let v = covercert(&["verify", a.to_str().unwrap()]);
    assert_eq!(code(&v), 0);
    assert_eq!(json(&v)["report"]["consistent"], true);

    let mut tampered = cert.clone();
    tampered["points"]["points"][0] = serde_json::json!([0.0, 0.0]);
    let t = dir.path().join("t.json");
    std::fs::write(&t, serde_json::to_string(&tampered).unwrap()).unwrap();
    let tv = covercert(&["verify", t.to_str().unwrap()]);
    assert_eq!(code(&tv), 1);
    assert_eq!(json(&tv)["report"]["consistent"], false);

    let mut wrong_schema = cert;
    wrong_schema["schema_version"] = serde_json::json!(2);
    std::fs::write(&t, serde_json::to_string(&wrong_schema).unwrap()).unwrap();
    assert_eq!(code(&covercert(&["verify", t.to_str().unwrap()])), 2);
}

#[test]
fn witness_body_file_matches_default_ball() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("body.json");
    std::fs::write(&spec, r#"{"kind": "ball", "dim": 2, "center": [0.0, 0.0], "radius": 0.5}"#).unwrap();
    let from_file = {
        let mut args = SMALL_WITNESS.to_vec();
        args.extend(["--body", spec.to_str().unwrap()]);
        json(&covercert(&args))
    };
    let default = json(&covercert(SMALL_WITNESS));
    assert_eq!(from_file["points"], default["points"]);
    assert_eq!(from_file["family"], default["family"]);
}

#[test]
fn large_ball_is_negative_control() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("neg.json");
    let o = covercert(&[
        "witness",
        "--seed",
        "1",
        "--unit-diameter",
        "--body-radius",
        "0.75",
        "--eps",
        "0.1",
        "--max-retries",
        "4",
        "--samples",
        "500",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let cert = read_json(&out);
    assert_eq!(cert["verdict"], false);
    assert_eq!(cert["diagnostics"]["hypotheses_pass"], false);
    assert_eq!(cert["diagnostics"]["coclique_success"], false);
    let v = covercert(&["verify", out.to_str().unwrap()]);
    assert_eq!(code(&v), 1);
    assert_eq!(json(&v)["report"]["consistent"], true);
}

#[test]
fn witness_config_errors_exit_2() {
    assert_eq!(code(&covercert(&["witness", "--seed", "1", "--n", "4"])), 2);
    assert_eq!(code(&covercert(&["witness", "--seed", "1", "--r", "0.8"])), 2);
    assert_eq!(code(&covercert(&["witness", "--seed", "1", "--body-radius", "0.5", "--eps", "-1"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("off.json");
    std::fs::write(&spec, r#"{"kind": "ball", "dim": 2, "center": [3.0, 0.0], "radius": 0.5}"#).unwrap();
    assert_eq!(code(&covercert(&["witness", "--seed", "1", "--body", spec.to_str().unwrap()])), 2);
}
