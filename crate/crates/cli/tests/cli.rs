use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gliders")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn names(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|l| {
            let parts: Vec<String> = l["partition"].as_array().unwrap().iter().map(|p| p.to_string()).collect();
            parts.join(",")
        })
        .collect()
}

#[test]
fn roots_a3_has_six_positive_roots() {
    let (code, v) = run_json(&["roots", "A", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["positive_roots"].as_array().unwrap().len(), 6);
}

#[test]
fn bad_rank_is_a_usage_error() {
    let (code, v) = run_json(&["roots", "D", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_subcommand_exits_one() {
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn missing_spec_file_exits_two() {
    let (code, v) = run_json(&["glider", "verify", "/nonexistent/spec.json"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
}

#[test]
fn diagonal_sl2_reports_collision() {
    let (code, v) = run_json(&["embed", "check", "--diagonal-sl2-so4"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["holds"], false);
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn canonical_c_embedding_satisfies_condition_one() {
    let (code, v) = run_json(&["embed", "check", "C", "2", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["holds"], true);
}

#[test]
fn embedding_elements_match_formula() {
    for (f, n, m) in [("A", "2", "4"), ("C", "2", "5"), ("D", "3", "5")] {
        let (code, v) = run_json(&["embed", "elements", f, n, m]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["formula_agrees"], true, "{f} {n} {m}");
    }
}

#[test]
fn corrected_sl234_verifies() {
    let p = spec("sl234_corrected.json");
    let (code, v) = run_json(&["glider", "verify", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = &v["payload"]["report"];
    assert_eq!(r["cond1_ok"], serde_json::json!([true, true]));
    assert_eq!(r["composition_ok"], true);
    assert_eq!(r["containment_ok"], true);
}

#[test]
fn literal_sl234_fails_cond1_at_level_one() {
    let p = spec("sl234.json");
    let (code, v) = run_json(&["glider", "verify", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["report"]["cond1_ok"], serde_json::json!([false, true]));
}

#[test]
fn verify_echoes_the_spec() {
    let p = spec("sl234_corrected.json");
    let (_, v) = run_json(&["glider", "verify", p.to_str().unwrap()]);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let echoed = &v["payload"]["spec"];
    assert_eq!(echoed["ranks"], original["ranks"]);
    assert_eq!(echoed["monomials"], original["monomials"]);
    for (a, b) in echoed["weights"].as_array().unwrap().iter().zip(original["weights"].as_array().unwrap()) {
        assert_eq!(a["coords"], b["coords"]);
    }
}

#[test]
fn trivial_chain_is_irreducible() {
    let p = spec("trivial.json");
    let (code, v) = run_json(&["glider", "classify", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["classification"]["verdict"], "Irreducible");
}

#[test]
fn family_c_is_outside_the_criterion() {
    let p = spec("class_c.json");
    let (code, v) = run_json(&["glider", "classify", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["classification"]["verdict"], "CriterionInapplicable");
}

#[test]
fn square_glider_has_singular_witness() {
    let p = spec("sl23_square.json");
    let (code, v) = run_json(&["glider", "classify", "--degree-bound", "8", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let w = &v["payload"]["subfragment_witness"]["TopSingularReached"];
    assert_eq!(w["exponent"], 7);
}

#[test]
fn reachable_sl2_in_sl4() {
    let (code, v) = run_json(&["orbits", "reachable", "A", "1", "3"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(names(&p["predicted"]), ["3,1", "2,1,1", "1,1,1,1"]);
    assert_eq!(names(&p["empirical"]["labels"]), ["3,1", "2,1,1", "1,1,1,1"]);
    assert_eq!(p["missing"].as_array().unwrap().len(), 0);
}

#[test]
fn reachable_b_reports_unexpected_orbits() {
    let (code, v) = run_json(&["orbits", "reachable", "B", "2", "5", "--samples", "2000", "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(!v["payload"]["unexpected"].as_array().unwrap().is_empty());
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn reachable_is_seed_deterministic() {
    let args = ["orbits", "reachable", "C", "2", "4", "--samples", "500", "--seed", "11", "--coeffs", "-2,-1,0,1,2"];
    let (_, a) = run(&args);
    let (_, b) = run(&args);
    assert_eq!(a, b);
}

#[test]
fn bad_coeffs_are_a_usage_error() {
    let (code, _) = run_json(&["orbits", "reachable", "A", "1", "3", "--coeffs", "1,x"]);
    assert_eq!(code, 1);
}

#[test]
fn hasse_dot_is_a_chain_for_sl3() {
    let (code, text) = run(&["orbits", "hasse", "A", "2", "--dot"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 2);
}

#[test]
fn so8_lists_doubled_very_even_labels() {
    let (code, v) = run_json(&["orbits", "list", "D", "4"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["payload"]["names"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(names.len(), 12);
    assert!(names.contains(&"[4^2]ᴵ") && names.contains(&"[4^2]ᴵᴵ"));
}
