use std::process::Command;

use relatives::cli::run;
use serde_json::{json, Value};

fn ok(args: &[&str]) -> Value {
    let out = run(args.iter().copied());
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stderr.is_empty());
    serde_json::from_str(&out.stdout).unwrap()
}

fn write_json(dir: &tempfile::TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn decide_examples() {
    let v = ok(&["decide", "--form1", "FS(3, 1)", "--form2", "FS(8, 2)"]);
    assert_eq!(v["status"], "Relatives");
    assert_eq!(v["rule"], "R5");
    let v = ok(&["decide", "--form1", "CE(4, 1)", "--form2", "CP(5, 1, 2)"]);
    assert_eq!(
        (v["status"].as_str(), v["rule"].as_str()),
        (Some("NotRelatives"), Some("R0"))
    );
    let v = ok(&["decide", "--form1", "FS(2, 2)", "--form2", "FS(2, 1)"]);
    assert_eq!(v["rule"], "R4");
    assert_eq!(
        v["certificate"]["remark"]["host_weights"],
        json!(["2/1", "2/1"])
    );
}

#[test]
fn expand_example() {
    let v = ok(&["expand", "--n", "2", "--b", "1", "--r", "3"]);
    let cs: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["c"].as_str().unwrap())
        .collect();
    assert_eq!(
        cs,
        ["3/1", "3/1", "3/1", "6/1", "3/1", "1/1", "3/1", "3/1", "1/1"]
    );
    assert_eq!(v["dimension"], "9");
}

#[test]
fn errors_exit_two_with_json() {
    for args in [
        vec!["decide", "--form1", "CP(3, 4, 1)", "--form2", "FS(1, 1)"],
        vec!["launch"],
        vec!["expand", "--n", "2", "--b", "x", "--r", "1"],
        vec!["decide", "--form1", "FS(1, 1)"],
        vec!["reduce", "--input", "/nonexistent/file.json"],
    ] {
        let out = run(args.iter().copied());
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        let err: Value = serde_json::from_str(&out.stderr).unwrap();
        assert!(err["error"].is_string());
    }
    let out = run(["decide", "--form1", "CP(3, 4, 1)", "--form2", "FS(1, 1)"]);
    assert!(out.stderr.contains("`4`"), "{}", out.stderr);
}

#[test]
fn reduce_rank_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    // |z1|^2 - |z2|^2 + (z1 conj z2 + z2 conj z1)
    let h = json!({"num_vars": 2, "max_degree": 1, "entries": [
        {"alpha": [1, 0], "beta": [1, 0], "re": "1", "im": "0"},
        {"alpha": [1, 0], "beta": [0, 1], "re": "1", "im": "0"},
        {"alpha": [0, 1], "beta": [1, 0], "re": "1", "im": "0"},
        {"alpha": [0, 1], "beta": [0, 1], "re": "-1", "im": "0"}
    ]});
    let v = ok(&["reduce", "--input", &write_json(&dir, "h.json", &h)]);
    assert_eq!(
        v["inertia"],
        json!({"positive": 1, "negative": 1, "rank": 2})
    );

    let germs = json!([
        {"num_vars": 1, "max_degree": 2, "coefficients": [{"alpha": [1], "re": "1", "im": "0"}]},
        {"num_vars": 1, "max_degree": 2, "coefficients": [{"alpha": [1], "re": "2", "im": "0"}]}
    ]);
    let v = ok(&[
        "rank",
        "--input",
        &write_json(&dir, "g.json", &germs),
        "--degree",
        "2",
    ]);
    assert_eq!(v, json!({"rank": 1, "independent": false}));

    let d = ok(&["decide", "--form1", "FS(2, 2)", "--form2", "FS(2, 1)"]);
    let w = write_json(&dir, "w.json", &d["certificate"]["candidate"]);
    let v = ok(&[
        "verify",
        "--form1",
        "FS(2, 2)",
        "--form2",
        "FS(2, 1)",
        "--witness",
        &w,
    ]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["evidence_only"], false);
    let v = ok(&[
        "verify",
        "--form1",
        "FS(2, 3)",
        "--form2",
        "FS(2, 1)",
        "--witness",
        &w,
    ]);
    assert_eq!(v["ok"], false);
    assert!(v["first_mismatch"].is_object());

    let float = json!({"h": {"weights": ["1"], "germs": [{"num_vars": 1, "max_degree": 1, "coefficients": [{"alpha": [1], "re": 0.5, "im": 0}]}]},
                       "k": {"weights": ["1"], "germs": [{"num_vars": 1, "max_degree": 1, "coefficients": [{"alpha": [1], "re": 1, "im": 0}]}]}});
    let out = run([
        "verify",
        "--form1",
        "FS(1, 1)",
        "--form2",
        "FS(1, 1)",
        "--witness",
        &write_json(&dir, "f.json", &float),
    ]);
    assert_eq!(out.code, 2);
}

#[test]
fn search_output_is_byte_stable() {
    let args = [
        "search",
        "--form1",
        "FS(2, 2)",
        "--form2",
        "FS(2, 1)",
        "--degree",
        "2",
        "--restarts",
        "6",
        "--seed",
        "42",
        "--tol",
        "1e-10",
    ];
    let a = run(args);
    let b = run(args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["evidence_only"], true);
    assert_eq!(v["per_restart"].as_array().unwrap().len(), 6);
    assert!(v.get("witness").is_some());
}

#[test]
fn pretty_flag_indents() {
    let out = run([
        "--pretty", "decide", "--form1", "FS(1, 1)", "--form2", "FS(1, 1)",
    ]);
    assert!(out.stdout.contains("\n  \""));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_relatives");
    let good = Command::new(bin)
        .args(["decide", "--form1", "FS(1, 1)", "--form2", "FS(2, 2)"])
        .output()
        .unwrap();
    assert_eq!(good.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&good.stdout).unwrap();
    assert_eq!(v["status"], "Relatives");
    let bad = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(serde_json::from_slice::<Value>(&bad.stderr).unwrap()["error"].is_string());
}
