use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn steenrod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steenrod")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("steenrod-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn lists_builtin_spaces() {
    let out = steenrod(&["spaces", "list", "--json"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let rp2 = v.as_array().unwrap().iter().find(|e| e["name"] == "rp2").unwrap();
    assert_eq!(rp2["betti"], serde_json::json!([1, 1, 1]));
}

#[test]
fn cohomology_of_the_torus() {
    let out = steenrod(&["cohomology", "--space", "torus", "--json"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["betti"], serde_json::json!([1, 2, 1]));
}

#[test]
fn square_matrix_of_rp2() {
    let out = steenrod(&["sq-matrix", "-i", "1", "-j", "1", "--space", "rp2", "--json"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["matrix"], serde_json::json!(["1"]));
}

#[test]
fn square_of_a_cocycle_file() {
    let c = temp_file("a.json", r#"{"degree": 1, "support": ["1,4", "1,5", "2,3", "2,4", "3,5"]}"#);
    let out = steenrod(&["sq", "-i", "1", "--cocycle", c.to_str().unwrap(), "--space", "rp2", "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["cohomology"]["image"], "1");
    assert_eq!(v["cochain"]["degree"], 2);
}

#[test]
fn cup_one_of_a_simplex_over_the_integers() {
    let out = steenrod(&["cupi", "-i", "1", "--simplex", "1,2,4", "--space", "rp2", "--ring", "z", "--json"]);
    assert!(out.status.success());
    let terms = stdout_json(&out);
    let signs: Vec<&str> = terms.as_array().unwrap().iter().map(|t| t["coefficient"].as_str().unwrap()).collect();
    assert_eq!(signs.len(), 3);
    assert_eq!(signs.iter().filter(|s| **s == "-1").count(), 2);
}

#[test]
fn cup_product_of_cochain_files() {
    let c = temp_file("b.json", r#"{"degree": 1, "support": ["1,4", "1,5", "2,3", "2,4", "3,5"]}"#);
    let p = c.to_str().unwrap();
    let out = steenrod(&["cupi", "-i", "0", "--left", p, "--right", p, "--space", "rp2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"degree\":2"));
}

#[test]
fn passing_suite_exits_zero() {
    let out = steenrod(&["verify", "--suite", "axioms", "--json", "--seed", "5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["suite"], "axioms");
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn injected_sign_fault_fails_the_suite() {
    let out = steenrod(&["verify", "--suite", "theorem2", "--spaces", "simplex-3", "--inject-sign-fault", "d", "--max-dim", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL minimal-counterexample"), "{text}");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = steenrod(&["verify", "--suite", "everything"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn malformed_space_reports_the_line() {
    let f = temp_file("bad.json", "{\n  \"vertices\": [\"a\", \"b\"],\n  \"facets\": [[\"a\" \"b\"]]\n}\n");
    let out = steenrod(&["cohomology", "--space", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn integer_cohomology_is_refused() {
    let out = steenrod(&["cohomology", "--space", "rp2", "--ring", "z"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_csv() {
    let out = steenrod(&["bench", "--max-i", "3", "--k", "2", "--no-timing"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "i,k,summands,face_ops,bound,measured_face_ops,slow_face_ops,wall_time_fast,wall_time_slow");
    let row: Vec<&str> = lines.find(|l| l.starts_with("3,2,")).unwrap().split(',').collect();
    assert_eq!(&row[..6], &["3", "2", "16", "96", "96", "96"]);
    assert_eq!(row[6], "261086");
}
