use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn gea(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gea")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn gea_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, stdout, stderr) = gea(&all);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    (code, v)
}

#[test]
fn check_accepts_chain() {
    let (code, v) = gea_json(&["check", &fixture("c3.gea")]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "check");
    assert_eq!(v["results"]["structure"]["effect_algebra_unit"], "2");
    assert_eq!(v["results"]["atoms"], serde_json::json!(["1"]));
}

#[test]
fn check_reports_axiom_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.gea");
    std::fs::write(&path, "elements: 0 a\nzero: 0\nsum: a + a = 0\n").unwrap();
    let (code, v) = gea_json(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["axioms_hold"], false);
    assert!(v["witnesses"][0]["axiom"].as_str().unwrap().starts_with("GEA"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nozero.gea");
    std::fs::write(&path, "elements: 0 a\n").unwrap();
    let (code, _, err) = gea(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("missing `zero:`"), "{err}");
    let (code, _, err) = gea(&["sk", &fixture("b4.gea"), "--relation", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("available: eq, merge"), "{err}");
    let (code, _, _) = gea(&["check", "/no/such/file.gea"]);
    assert_eq!(code, 2);
    let (code, _, _) = gea(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = gea(&["search", "--property", "nope", "--max-size", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn sk_failure_names_its_witness() {
    let (code, v) = gea_json(&["sk", &fixture("t3.gea"), "--relation", "eq"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["sk"], false);
    let sk4a = v["witnesses"].as_array().unwrap().iter().find(|w| w["axiom"] == "SK4a").unwrap();
    assert_eq!(sk4a["elements"], serde_json::json!(["a", "b"]));
}

#[test]
fn sk_success_lists_splitting_maps() {
    let (code, v) = gea_json(&["sk", &fixture("b4.gea"), "--relation", "merge"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["der"], true);
    assert_eq!(v["results"]["splitting_maps"].as_array().unwrap().len(), 2);
    assert!(v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn exocenter_and_hull_reports() {
    let (code, v) = gea_json(&["exocenter", &fixture("b4.gea")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["size"], 4);
    assert_eq!(v["results"]["cross_checks"]["brute_force_agrees"], true);
    let (code, v) = gea_json(&["hull", &fixture("b4.gea"), "--relation", "merge"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["eta"]["a"], serde_json::json!(["0", "a", "b", "1"]));
    assert_eq!(v["results"]["divisible"], false);
    assert_eq!(v["results"]["cross_checks"]["dyad_criterion_agrees"], true);
    let (code, v) = gea_json(&["hull", &fixture("t3.gea")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["source"], "exocentral cover");
}

#[test]
fn decompose_boolean_algebra() {
    let (code, v) = gea_json(&["decompose", &fixture("b4.gea"), "--relation", "merge"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["type"], "I_F");
    assert_eq!(v["results"]["unit"], "1");
    assert_eq!(v["results"]["checks"]["unique"], true);
}

#[test]
fn catalog_then_verify_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.jsonl");
    let p = path.to_str().unwrap();
    let (code, v) = gea_json(&["catalog", "--max-size", "4", "--out", p, "--jobs", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["written"], 9);
    let (_, v) = gea_json(&["catalog", "--max-size", "4", "--out", p]);
    assert_eq!(v["results"]["skipped"], 9);
    let (code, _, _) = gea(&["catalog", "--max-size", "9", "--out", p]);
    assert_eq!(code, 2);

    let (code, v) = gea_json(&["verify", "--max-size", "3", "--theorems", "gea-axioms,type-criteria"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["properties"].as_array().unwrap().len(), 2);
    let (code, v) = gea_json(&["verify", "--max-size", "3", "--invert", "gea-axioms"]);
    assert_eq!(code, 1);
    assert!(v["witnesses"].as_array().unwrap().iter().any(|w| w["property"] == "gea-axioms"));

    let (code, _) = gea_json(&["search", "--property", "trivially-false", "--max-size", "4"]);
    assert_eq!(code, 0);
    let (code, v) = gea_json(&["search", "--property", "divisible-hull-with-monads", "--max-size", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["witnesses"][0]["elements"], serde_json::json!(["0", "a"]));
}

#[test]
fn verify_lists_properties() {
    let (code, out, _) = gea(&["verify", "--list"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("type-decomposition")));
}
