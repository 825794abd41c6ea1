mod common;

use std::process::{Command, Output};

use common::fixture;
use serde_json::Value;

fn cbp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbp"))
        .args(args)
        .output()
        .expect("run cbp")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = cbp(&full);
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(rel: &str) -> String {
    fixture(rel).to_string_lossy().into_owned()
}

#[test]
fn validate_clean_model() {
    let out = cbp(&["validate", &path("m1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 error(s), 0 warning(s)"));
    assert!(!stdout(&out).contains("Goal priorities"));
}

#[test]
fn subcommands_select_sections() {
    let m = path("m1_risk.json");
    let keys = |args: &[&str]| -> Vec<String> {
        json(args).as_object().unwrap().keys().cloned().collect()
    };
    assert_eq!(keys(&["validate", &m]), ["validation"]);
    assert_eq!(
        keys(&["prioritize", &m]),
        ["config_echo", "method_notes", "priorities", "validation"]
    );
    assert_eq!(
        keys(&["classify", &m]),
        [
            "classifications",
            "config_echo",
            "method_notes",
            "priorities",
            "validation"
        ]
    );
    assert_eq!(
        keys(&["plan", &m]),
        ["config_echo", "method_notes", "plan", "validation"]
    );
    let report = keys(&["report", &m]);
    for k in [
        "config_echo",
        "method_notes",
        "classifications",
        "plan",
        "priorities",
    ] {
        assert!(report.iter().any(|r| r == k), "{k} missing from {report:?}");
    }
}

#[test]
fn prioritize_json_values() {
    let v = json(&["prioritize", &path("m1.json")]);
    let p = &v["priorities"]["process_priority"];
    assert!((p["P2"].as_f64().unwrap() - 0.92).abs() < 1e-9);
    assert!((v["priorities"]["goal_priority"]["G1"].as_f64().unwrap() - 2.2 / 3.0).abs() < 1e-9);
}

#[test]
fn classify_text_marks_the_cbp() {
    let out = stdout(&cbp(&["classify", &path("m1_risk.json")]));
    let p2 = out
        .lines()
        .find(|l| l.trim_start().starts_with("P2") && l.contains("Certainly"))
        .unwrap();
    assert!(
        p2.contains("Certainly CBP") && p2.trim_end().ends_with("yes"),
        "{p2}"
    );
    assert!(out.contains("mean of process priorities"));
}

#[test]
fn threshold_flag_overrides_the_mean() {
    let m = path("m1_risk.json");
    let v = json(&["--threshold", "0.5", "classify", &m]);
    let rows = v["classifications"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["priority_class"] == "high"));
    let out = stdout(&cbp(&["--threshold", "0.5", "report", &m]));
    assert!(out.contains("threshold: 0.500000"));
    assert!(!out.contains("priority threshold  0.500000 (default)"));
}

#[test]
fn merge_threshold_flag_merges_units() {
    let m = path("m1_risk.json");
    let units = |v: &Value| -> Vec<String> {
        v["plan"]["units"]
            .as_array()
            .unwrap()
            .iter()
            .map(|u| u["id"].as_str().unwrap().to_string())
            .collect()
    };
    let default = json(&["plan", &m]);
    assert!(!units(&default).contains(&"P1+P2".to_string()));
    let merged = json(&["--merge-threshold", "0.4", "plan", &m]);
    assert!(units(&merged).contains(&"P1+P2".to_string()));
}

#[test]
fn capacity_flag_cuts_the_release() {
    let v = json(&["--capacity", "1", "plan", &path("m1_risk.json")]);
    assert_eq!(v["plan"]["selected"], serde_json::json!(["P2"]));
    assert_eq!(v["plan"]["backlog"], serde_json::json!(["P3", "P1"]));
}

#[test]
fn out_of_range_flag_is_a_validation_error() {
    let out = cbp(&["--capacity", "0", "plan", &path("m1.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("CONFIG_RANGE"));
    assert!(!stdout(&out).contains("Release plan"));
}

#[test]
fn warnings_alone_exit_zero() {
    for code in ["GOAL_UNSUPPORTED", "PROCESS_UNSUPPORTING"] {
        let out = cbp(&["report", &path(&format!("invalid/{code}.json"))]);
        assert_eq!(out.status.code(), Some(0), "{code}");
        assert!(stdout(&out).contains(code));
    }
}

#[test]
fn unreadable_inputs_exit_two() {
    for name in ["syntax.json", "unknown_key.json", "undeclared_process.json"] {
        let out = cbp(&["report", &path(&format!("unreadable/{name}"))]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    assert_eq!(cbp(&["report", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(cbp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        cbp(&["--format", "xml", "report", &path("m1.json")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn repeated_runs_are_byte_identical() {
    for format in ["text", "json"] {
        let args = ["--format", format, "report", &path("m1_risk.json")];
        let first = cbp(&args).stdout;
        for _ in 0..3 {
            assert_eq!(cbp(&args).stdout, first);
        }
    }
}
