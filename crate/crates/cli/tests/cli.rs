use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn hopfoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfoid")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn generated_pair_double_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pair_z3.json");
    let gen = hopfoid(&["gen", "pair", "Z3", "--out", path(&file)]);
    assert_eq!(gen.status.code(), Some(0));

    let rt = hopfoid(&["roundtrip", path(&file)]);
    assert_eq!(rt.status.code(), Some(0), "{}", String::from_utf8_lossy(&rt.stdout));
    assert!(stdout_json(&rt)["entries"].as_array().unwrap().iter().all(|e| e["passed"] == true));

    let validate = hopfoid(&["validate", path(&file), "--format", "text"]);
    assert_eq!(validate.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&validate.stdout).contains("PASS"));
}

#[test]
fn corrupted_inverse_fails_check_naming_the_inverse_clause() {
    let dir = tempfile::tempdir().unwrap();
    let double = dir.path().join("d.json");
    let built = dir.path().join("h.json");
    assert!(hopfoid(&["gen", "pair", "Z3", "--out", path(&double)]).status.success());
    assert!(hopfoid(&["hopfoid", path(&double), "--out", path(&built)]).status.success());
    assert_eq!(hopfoid(&["check", path(&built)]).status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&built).unwrap()).unwrap();
    let elements = doc["payload"]["carrier"]["elements"].as_array().unwrap().clone();
    doc["payload"]["relations"]["i"] = Value::Array(elements.iter().map(|x| json!([x, x])).collect());
    std::fs::write(&built, doc.to_string()).unwrap();

    let check = hopfoid(&["check", path(&built)]);
    assert_eq!(check.status.code(), Some(1));
    let report = stdout_json(&check);
    let failed: Vec<&str> = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["passed"] == false)
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert!(failed.iter().any(|n| n.starts_with("(vii)")), "{failed:?}");
}

#[test]
fn core_of_trivial_z2_has_one_square() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    assert!(hopfoid(&["gen", "trivial", "Z2", "--out", path(&file)]).status.success());
    let core = hopfoid(&["core", path(&file)]);
    assert_eq!(core.status.code(), Some(0));
    let doc = stdout_json(&core);
    assert_eq!(doc["kind"], "groupoid");
    assert_eq!(doc["payload"]["arrows"]["elements"].as_array().unwrap().len(), 1);
}

#[test]
fn hopfoid_to_double_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let (d, h, back) = (dir.path().join("d.json"), dir.path().join("h.json"), dir.path().join("b.json"));
    assert!(hopfoid(&["gen", "trivial", "S3", "--out", path(&d)]).status.success());
    assert!(hopfoid(&["hopfoid", path(&d), "--out", path(&h)]).status.success());
    assert_eq!(hopfoid(&["roundtrip", path(&h)]).status.code(), Some(0));
    assert!(hopfoid(&["double", path(&h), "--out", path(&back)]).status.success());
    assert_eq!(hopfoid(&["validate", path(&back)]).status.code(), Some(0));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"kind\": \"groupoid\",").unwrap();
    let out = hopfoid(&["validate", path(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let double = dir.path().join("d.json");
    assert!(hopfoid(&["gen", "trivial", "Z2", "--out", path(&double)]).status.success());
    assert_eq!(hopfoid(&["check", path(&double)]).status.code(), Some(2));
    assert_eq!(hopfoid(&["double", path(&double)]).status.code(), Some(2));
    assert_eq!(hopfoid(&["gen", "pair", "Q8"]).status.code(), Some(2));
    assert_eq!(hopfoid(&["validate", path(&dir.path().join("missing.json"))]).status.code(), Some(2));
}

#[test]
fn corpus_listing_respects_the_size_cap() {
    let out = hopfoid(&["gen", "corpus", "--seed", "3", "--max-size", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let listing = stdout_json(&out);
    let items = listing.as_array().unwrap();
    assert!(!items.is_empty());
    assert!(items.iter().all(|x| x["squares"].as_u64().unwrap() <= 9));
}
