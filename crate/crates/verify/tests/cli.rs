use std::path::PathBuf;
use std::process::{Command, Output};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).env_remove("VERIFY_MAX_DIM").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("verify-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).expect("temp file");
    p
}

#[test]
fn passing_scenario_exits_zero() {
    let o = verify(&["run", "plethysm"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("plethysm: 8/8 passed"));
}

#[test]
fn failing_scenario_exits_one() {
    let o = verify(&["run", "p2-ext1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn unknown_scenario_is_a_usage_error() {
    let o = verify(&["run", "no-such-scenario"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("vanishing-n3"));
}

#[test]
fn malformed_expression_is_a_usage_error() {
    let o = verify(&["query", "--space", "point(V=4); G(2,V)", "--expr", "O(H1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at byte 4"));
}

#[test]
fn resource_limit_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_verify")).args(["run", "y3-n4"]).env("VERIFY_MAX_DIM", "2").output().expect("binary runs");
    assert_eq!(code(&o), 3);
}

#[test]
fn json_report_is_deterministic_without_timing() {
    let a = verify(&["run", "long-sequences", "--json", "--no-timing", "--jobs", "1"]);
    let b = verify(&["run", "long-sequences", "--json", "--no-timing", "--jobs", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).expect("valid JSON");
    assert_eq!(v["scenario"], "long-sequences");
    let first = &v["assertions"][0];
    for key in ["id", "anchor", "kind", "status", "expected", "got", "ms"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    assert_eq!(first["ms"], 0);
}

#[test]
fn query_reports_borel_weil_sections() {
    let o = verify(&["query", "--space", "point(V=4); G(2,V)", "--expr", "O(H1)", "--euler", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert_eq!(v["euler"]["dim"], "6");
    assert_eq!(v["table"]["groups"]["0"], serde_json::json!([[[0, 0, -1, -1], 1]]));
}

#[test]
fn query_ext_and_det_twist() {
    let o = verify(&["query", "--space", "point(V=3); P(V)", "--expr", "O", "--ext", "Om_rel(1)", "--det-twist", "-1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("H^1 = S(-1,-1,-1)"), "{}", stdout(&o));
}

#[test]
fn check_accepts_the_kapranov_collection() {
    let p = scratch("kapranov.col", "point(V=4); G(2,V)\n# Kapranov's collection on G(2,4)\nO\ndual(S1)\nS^2 dual(S1)\nO(L1)\ndual(S1) * O(L1)\nO(2L1)\n");
    let o = verify(&["check", "--collection", p.to_str().expect("utf-8 path")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("6 items, 15 pairs, 0 failures"));
}

#[test]
fn check_rejects_a_misordered_collection() {
    let p = scratch("reversed.col", "point(V=3); P(V)\nO(H1)\nO\n");
    let o = verify(&["check", "--collection", p.to_str().expect("utf-8 path"), "--json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert_eq!(v["ok"], false);
}

#[test]
fn list_names_every_scenario() {
    let o = verify(&["list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 17);
}
