//! Every JSON document the tool reads or writes validates against the
//! schemas shipped in `schemas/`.

use std::path::{Path, PathBuf};
use std::process::Command;

fn schemas_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn validator(schema_file: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(schemas_dir().join(schema_file))
        .unwrap_or_else(|e| panic!("read {schema_file}: {e}"));
    let schema: serde_json::Value = serde_json::from_str(&text).expect("schema parses");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, doc: &str, label: &str) {
    let instance: serde_json::Value =
        serde_json::from_str(doc).unwrap_or_else(|e| panic!("{label} parses as JSON: {e}"));
    let errors: Vec<String> = v.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{label} violates schema: {errors:?}");
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixtures_dir().join(name)).expect("fixture exists")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).expect("golden file exists")
}

fn run_tool(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_rth"))
        .args(args)
        .current_dir(fixtures_dir())
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "rth {args:?} failed");
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn theory_files_validate() {
    let v = validator("theory.schema.json");
    assert_valid(&v, &fixture("tri.json"), "tri.json");
    assert_valid(&v, &fixture("um1.json"), "um1.json");
    for (family, size) in [
        ("truncated-addition", "3"),
        ("union-monoid", "2"),
        ("tropical-min", "2"),
        ("blurred-addition", "3"),
    ] {
        let doc = run_tool(&["gen", "--family", family, "--size", size, "--seed", "1"]);
        assert_valid(&v, &doc, family);
    }
    assert_valid(&v, &golden("dist_um1.golden"), "distinguishability output");
}

#[test]
fn valuation_files_validate() {
    let v = validator("valuation.schema.json");
    for name in ["f.json", "g.json", "root.json"] {
        assert_valid(&v, &fixture(name), name);
    }
}

#[test]
fn monotone_reports_validate() {
    let v = validator("monotone.schema.json");
    assert_valid(&v, &golden("yield_tri.golden"), "yield output");
    assert_valid(&v, &golden("cost_tri.golden"), "cost output");
    assert_valid(&v, &golden("pullback_aug.golden"), "pullback output");
    assert_valid(&v, &golden("contraction_tri.golden"), "contraction output");
    assert_valid(&v, &golden("convex_weight.golden"), "convex weight output");
    assert_valid(&v, &golden("convex_robustness.golden"), "convex robustness output");
}

#[test]
fn mediating_map_files_validate() {
    let v = validator("mediating-map.schema.json");
    assert_valid(&v, &fixture("aug.json"), "aug.json");
}

#[test]
fn convex_theory_files_validate() {
    let v = validator("convex-theory.schema.json");
    assert_valid(&v, &fixture("cvx1.json"), "cvx1.json");
}

#[test]
fn validation_reports_validate() {
    let v = validator("validation-report.schema.json");
    assert_valid(&v, &golden("validate_tri.golden"), "validate tri");
    assert_valid(&v, &golden("validate_cvx1.golden"), "validate cvx1");
    // A failing validation must also conform.
    let out = Command::new(env!("CARGO_BIN_EXE_rth"))
        .args(["validate", "--theory", "broken.json"])
        .current_dir(make_broken_theory())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    assert_valid(
        &v,
        &String::from_utf8(out.stdout).unwrap(),
        "failing validation report",
    );
}

fn make_broken_theory() -> PathBuf {
    let dir = std::env::temp_dir().join("rth-schema-tests");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("broken.json"),
        r#"{
  "resources": ["u", "v"],
  "free": ["u"],
  "neutral": ["u"],
  "combine": { "u,u": ["u"], "u,v": ["u"], "v,v": ["v"] }
}"#,
    )
    .unwrap();
    dir
}

#[test]
fn order_reports_validate() {
    let v = validator("order-report.schema.json");
    assert_valid(&v, &golden("order_tri.golden"), "order tri");
}

#[test]
fn compare_reports_validate() {
    let v = validator("compare-report.schema.json");
    assert_valid(&v, &golden("compare_fg.golden"), "compare report");
}

#[test]
fn family_specs_validate() {
    let v = validator("family-spec.schema.json");
    let samples = [
        r#"{"family": "truncated-addition", "max": 4}"#,
        r#"{"family": "union-monoid", "ground": 3}"#,
        r#"{"family": "builtin", "name": "tri"}"#,
        r#"{"family": "product",
            "left": {"family": "builtin", "name": "um1"},
            "right": {"family": "truncated-addition", "max": 2}}"#,
    ];
    for s in samples {
        assert_valid(&v, s, "family spec");
    }
    // Unknown family names are rejected.
    let bad: serde_json::Value =
        serde_json::from_str(r#"{"family": "no-such-family"}"#).unwrap();
    assert!(!v.is_valid(&bad));
}
