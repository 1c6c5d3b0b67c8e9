use std::process::{Command, Output};

fn orbitlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitlift"))
        .args(args)
        .env_remove("ORBITLIFT_MAX_MINORS")
        .output()
        .expect("binary runs")
}

fn write_request(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("orbitlift-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn lift_from_request_file() {
    let path = write_request(
        "lift",
        r#"{"verb": "lift", "scenario": "DSZ-A", "dims": {"n": 2, "m": 1}, "payload": [["0"]]}"#,
    );
    let out = orbitlift(&["lift", "--in", &path]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        report["lift"]["x"][0]["coords"],
        serde_json::json!(["1", "0", "0", "0"])
    );
    assert_eq!(report["transport"]["passed"], serde_json::json!(true));
}

#[test]
fn hilbert_from_flags() {
    let out = orbitlift(&["hilbert", "--dims", "n=2,m=1,d_max=4", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["coefficients"], serde_json::json!([1, 4, 9, 16, 25]));
    assert_eq!(report["agree"], serde_json::json!(true));
}

#[test]
fn validation_failures_exit_with_two() {
    let out = orbitlift(&["invariants", "--scenario", "T3.1", "--dims", "n=2,m=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires 2m < n"));

    let out = orbitlift(&["audit", "--scenario", "T3.1", "--dims", "n=3,m=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed"));

    let out = orbitlift(&["lift", "--scenario", "NOPE", "--dims", "n=3,m=1"]);
    assert_eq!(out.status.code(), Some(2));

    let path = write_request(
        "bad",
        r#"{"scenario": "T3.1", "dims": {"n": 3, "m": 1}, "y": [["1/0"]]}"#,
    );
    let out = orbitlift(&["lift", "--in", &path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn minors_cap_is_read_from_the_environment() {
    let path = write_request(
        "cap",
        r#"{"scenario": "T3.3", "dims": {"n": 5, "m": 2}, "y": [["0", "1"], ["1", "0"]]}"#,
    );
    let out = Command::new(env!("CARGO_BIN_EXE_orbitlift"))
        .args(["lift", "--in", &path])
        .env("ORBITLIFT_MAX_MINORS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn reports_go_to_the_out_file() {
    let out_path = std::env::temp_dir().join(format!("orbitlift-cli-{}-out.json", std::process::id()));
    let out_str = out_path.to_string_lossy().into_owned();
    let out = orbitlift(&[
        "audit",
        "--scenario",
        "GLGL",
        "--dims",
        "n=2,m=1",
        "--samples",
        "5",
        "--seed",
        "1",
        "--out",
        &out_str,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["status"], serde_json::json!("PASS"));
    assert_eq!(report["null_cone"]["evidence"], serde_json::json!("WITNESSED"));
}
