use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn schwarzkit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_schwarzkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a single JSON document")
}

const F1: &str = r#"{"num": [[0,0],[0,0],[1,0]], "den": [[1,0],[-2,0],[1,0]]}"#;

#[test]
fn schwarzian_of_the_worked_example() {
    let out = schwarzkit(&["schwarzian"], F1);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_out(&out);
    assert_eq!(v["schwarzian"]["num"], serde_json::json!([[-1.5, 0.0]]));
    assert_eq!(v["schwarzian"]["den"].as_array().unwrap().len(), 5);
    assert_eq!(v["infinity"]["kind"], "regular");
    assert!(out.stderr.is_empty());
}

#[test]
fn input_from_file() {
    let dir = std::env::temp_dir().join(format!("schwarzkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f1.json");
    std::fs::write(&path, F1).unwrap();
    let out = schwarzkit(&["schwarzian", "--in", path.to_str().unwrap()], "");
    assert!(out.status.success());
    assert_eq!(json_out(&out)["schwarzian"]["num"], serde_json::json!([[-1.5, 0.0]]));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(schwarzkit(&["schwarzian"], "not json").status.code(), Some(2));
    assert_eq!(schwarzkit(&["schwarzian"], r#"{"num": [], "den": [[1,0]], "x": 0}"#).status.code(), Some(2));
    assert_eq!(schwarzkit(&["schwarzian"], r#"{"num": [[1,0]], "den": []}"#).status.code(), Some(3));
    assert_eq!(schwarzkit(&["cubic"], r#"{"points": [[1,0],[1,0],[2,0],[3,0]]}"#).status.code(), Some(3));
    assert_eq!(schwarzkit(&["schwarzian", "--tol", "-1"], F1).status.code(), Some(2));
    let missing = schwarzkit(&["schwarzian", "--in", "/nonexistent/input.json"], "");
    assert_eq!(missing.status.code(), Some(2));
    assert!(missing.stdout.is_empty());
}

#[test]
fn solve_is_deterministic_and_round_trips() {
    let payload = r#"{"points": [[0,0],[1,0],[0,1],[-1,-1]]}"#;
    let a = schwarzkit(&["solve", "--seed", "7"], payload);
    let b = schwarzkit(&["solve", "--seed", "7"], payload);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v = json_out(&a);
    let report: schwarzkit::reconstruction::FiberSolveReport =
        serde_json::from_value(v["report"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), v["report"]);
    assert!(!report.solutions.is_empty() && report.solutions.len() <= 2);
    assert_eq!(v["maps"].as_array().unwrap().len(), report.solutions.len());
    assert_eq!(v["tetrahedron"], false);
}

#[test]
fn check_rational_mode() {
    let payload = r#"{"phi": {"num": [[-1.5,0]], "den": [[0,0],[0,0],[1,0],[-2,0],[1,0]]}, "mode": "rational", "variant": "AllL_E123"}"#;
    let out = schwarzkit(&["check"], payload);
    assert!(out.status.success());
    let v = json_out(&out);
    assert_eq!(v["record"]["overall"], true);
    assert_eq!(v["record"]["variant"], "AllL_E123");
}

#[test]
fn cubic_and_local_commands() {
    let out = schwarzkit(&["cubic"], r#"{"quartic": [[0,0],[-2,0],[0,0],[0,0],[1,0]]}"#);
    assert!(out.status.success());
    let v = json_out(&out);
    assert_eq!(v["tetrahedron"], true);
    assert_eq!(v["branches"].as_array().unwrap().len(), 1);

    let out = schwarzkit(
        &["reconstruct-local", "--order", "6"],
        r#"{"phi": {"num": [[-1.5,0]], "den": [[0,0],[0,0],[1,0]]}, "point": [0,0]}"#,
    );
    assert!(out.status.success());
    assert_eq!(json_out(&out)["local_degree"], 2);
}
