use std::process::{Command, Output};

use serde_json::Value;

fn ramify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramify")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn index_record_as_json() {
    let out = ramify(&["index", "--json", "[[t^1,1],[0,t^1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["index"], serde_json::json!({"kind": "positive", "num": 1, "den": 1}));
    assert_eq!(v["residue"]["kind"], "additive");
    assert_eq!(v["checks"]["hom"], true);
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["gauge", "index", "residue", "checks"]);
}

#[test]
fn index_over_f2_is_fractional() {
    let out = ramify(&["--field", "fp:2", "index", "--json", "[[t^17, t^4], [0, t^2]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["index"]["num"].as_i64(), v["index"]["den"].as_i64()), (Some(13), Some(2)));
}

#[test]
fn text_output_has_the_index() {
    let out = ramify(&["index", "[[1, t^-2], [0, 1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("index.num: 2")), "{text}");
}

#[test]
fn verify_paper_passes() {
    let out = ramify(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cases reproduced"));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")), "{text}");
}

#[test]
fn small_property_suite() {
    let out = ramify(&["property-suite", "--seed", "3", "--count", "10", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 3);
    assert!(v["tallies"].as_array().unwrap().iter().all(|t| t["failed"] == 0));
}

#[test]
fn syntax_error_exits_2() {
    let out = ramify(&["index", "[[t^1,1],[0,t^"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_field_exits_2() {
    assert_eq!(ramify(&["--field", "fp:4", "index", "[[t]]"]).status.code(), Some(2));
}

#[test]
fn jets_of_integral_input_exits_2() {
    assert_eq!(ramify(&["jets", "[[1, t], [0, 1]]"]).status.code(), Some(2));
}

#[test]
fn low_precision_is_raised_with_a_notice() {
    let out = ramify(&["--prec", "2", "index", "--json", "[[1, t^-3], [0, 1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("below the required"), "{err}");
    assert_eq!(json(&out)["index"]["num"], 3);
}

#[test]
fn pushforward_law_holds() {
    let out = ramify(&["pushforward", "--json", "2", "[[1, t^-1], [0, 1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["index_ok"], true);
    assert_eq!(v["residue_ok"], true);
}

#[test]
fn cartan_finds_the_coweight() {
    let out = ramify(&["cartan", "--json", "[[t^-1, 1], [0, t]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mu"], serde_json::json!([1, -1]));
    assert_eq!(v["cell_membership"]["found"], true);
}
