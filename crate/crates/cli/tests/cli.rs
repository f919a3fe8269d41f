use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn abcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abcover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

// x1 - x3, x1 - mu^2 x3, ..., with mu^2 = -1 + mu
const CEVA_LINES: &str = r#"{"lines":[
 [[1,1,0,1],[0,1,0,1],[-1,1,0,1]],
 [[1,1,0,1],[0,1,0,1],[1,1,-1,1]],
 [[1,1,0,1],[0,1,0,1],[0,1,1,1]],
 [[0,1,0,1],[1,1,0,1],[1,1,-1,1]],
 [[0,1,0,1],[1,1,0,1],[-1,1,0,1]],
 [[0,1,0,1],[1,1,0,1],[0,1,1,1]],
 [[1,1,0,1],[0,1,1,1],[0,1,0,1]],
 [[1,1,0,1],[1,1,-1,1],[0,1,0,1]],
 [[1,1,0,1],[-1,1,0,1],[0,1,0,1]]]}"#;

const CEVA_CHARACTER: &str =
    r#"{"p":5,"m":2,"weights":[[1,1],[1,0],[1,1],[3,3],[3,0],[0,1],[0,1],[0,2],[1,1]]}"#;

const COORDINATE_LINES: &str = r#"{"lines":[
 [[1,1,0,1],[0,1,0,1],[0,1,0,1]],
 [[0,1,0,1],[1,1,0,1],[0,1,0,1]],
 [[0,1,0,1],[0,1,0,1],[1,1,0,1]]]}"#;

#[test]
fn default_run_reproduces_reference_values() {
    let out = abcover(&["--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["K2"], 333);
    assert_eq!(v["euler"], 111);
    assert_eq!(v["miyaoka_yau"], true);
    assert_eq!(v["chi"], "37");
    assert_eq!(v["quotient_pg"], serde_json::json!([1, 5, 5, 13, 11, 1]));
    assert_eq!(v["pg"], 36);
    assert_eq!(v["q"], 0);
    assert_eq!(v["rigidity"]["respecting"], serde_json::json!(["identity"]));
    assert_eq!(v["rigidity"]["incidence_automorphisms"], 432);
    let notes = v["provenance_notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n["detail"].as_str().unwrap().contains("p349")));
}

#[test]
fn json_is_reproducible_and_sorted() {
    let a = abcover(&["invariants", "--json"]);
    let b = abcover(&["invariants", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn reports_contain_no_floats() {
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float {n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(o) => o.values().for_each(walk),
            _ => {}
        }
    }
    walk(&json_of(&abcover(&["full", "--json", "--tables"])));
}

#[test]
fn ceva_files_match_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", CEVA_LINES);
    let c = write(dir.path(), "c.json", CEVA_CHARACTER);
    let custom = abcover(&["--json", "--arrangement", &a, "--character", &c]);
    assert!(custom.status.success(), "{}", String::from_utf8_lossy(&custom.stderr));
    let custom = json_of(&custom);
    let builtin = json_of(&abcover(&["--json"]));
    for key in [
        "arrangement",
        "character",
        "K2",
        "euler",
        "chi",
        "intersections",
        "quotient_pg",
        "pg",
        "q",
        "rigidity",
        "numerology",
        "genus",
    ] {
        assert_eq!(custom[key], builtin[key], "{key}");
    }
}

#[test]
fn zero_weight_is_a_validation_error_naming_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", CEVA_LINES);
    let c = write(
        dir.path(),
        "c.json",
        r#"{"p":5,"m":2,"weights":[[1,1],[1,0],[0,0],[3,3],[3,0],[0,1],[0,1],[0,2],[2,2]]}"#,
    );
    let out = abcover(&["--arrangement", &a, "--character", &c]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("l3"), "{err}");
}

#[test]
fn three_coordinate_lines_give_a_small_cover() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", COORDINATE_LINES);
    let c = write(dir.path(), "c.json", r#"{"p":5,"m":2,"weights":[[1,0],[0,1],[4,4]]}"#);
    let out = abcover(&["--json", "--arrangement", &a, "--character", &c]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    // (K^2 + e)/12 must be an integer
    let (k2, e) = (v["K2"].as_i64().unwrap(), v["euler"].as_i64().unwrap());
    assert_eq!((k2 + e) % 12, 0);
    assert_eq!((k2, e), (9, 3));
    assert_eq!(v["chi"], "1");
    assert_eq!(v["pg"], 0);
    assert_eq!(v["q"], 0);
}

#[test]
fn quadruple_point_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "a.json",
        r#"{"lines":[
         [[1,1,0,1],[0,1,0,1],[0,1,0,1]],
         [[0,1,0,1],[1,1,0,1],[0,1,0,1]],
         [[1,1,0,1],[1,1,0,1],[0,1,0,1]],
         [[1,1,0,1],[-1,1,0,1],[0,1,0,1]]]}"#,
    );
    let c = write(dir.path(), "c.json", r#"{"p":5,"m":2,"weights":[[1,0],[0,1],[1,1],[3,3]]}"#);
    let out = abcover(&["--arrangement", &a, "--character", &c]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("multiplicity 4"));
}

#[test]
fn malformed_and_non_prime_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", CEVA_LINES);
    let bad = write(dir.path(), "bad.json", "{not json");
    let out = abcover(&["--arrangement", &a, "--character", &bad]);
    assert_eq!(out.status.code(), Some(2));

    let c = write(dir.path(), "c.json", r#"{"p":4,"m":1,"weights":[[1],[1],[1],[1],[1],[1],[1],[1],[0]]}"#);
    let out = abcover(&["--arrangement", &a, "--character", &c]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("prime"));
}

#[test]
fn tables_show_clamps_and_the_misprint() {
    let out = abcover(&["tables"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("9!8"));
    assert!(text.contains("-1*"));
    assert!(text.contains("printed as 8"));
}

#[test]
fn numerology_for_the_fake_plane() {
    let out = abcover(&["numerology", "--json", "--k2", "9", "--m", "5", "--dim", "3"]);
    assert!(out.status.success());
    let v = json_of(&out);
    let inst = &v["numerology"]["instance"];
    assert_eq!(inst["covering_degree"], 225);
    assert_eq!(inst["curve_degree"], 720);
    assert_eq!(inst["geometric_genus"], 1225);
    assert_eq!(inst["cusp_count"], 3120);
    assert_eq!(v["numerology"]["homeotopy_order"], "93750");
    assert_eq!(v["numerology"]["deformation_class_count"], 2);
}

#[test]
fn chart_seed_and_eliminator_do_not_change_pg() {
    let base = json_of(&abcover(&["pg", "--json"]));
    let other = json_of(&abcover(&["pg", "--json", "--chart-seed", "7", "--eliminator", "gauss-jordan"]));
    assert_eq!(base["quotient_pg"], other["quotient_pg"]);
    assert_ne!(base["genus"]["chart"], other["genus"]["chart"]);
    let out = abcover(&["pg", "--eliminator", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn forms_are_printed() {
    let out = abcover(&["pg", "--json", "--forms"]);
    let v = json_of(&out);
    let first = &v["forms"]["H=<(0,1)>"];
    assert_eq!(first[1].as_array().unwrap().len(), 1);
    assert_eq!(first[0].as_array().unwrap().len(), 0);
}
