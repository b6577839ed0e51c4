use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is a JSON report")
}

fn check<'a>(rep: &'a Value, name: &str) -> &'a Value {
    rep["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name:?} in {rep}"))
}

fn number<'a>(rep: &'a Value, label: &str) -> &'a Value {
    rep["numbers"]
        .as_array()
        .unwrap()
        .iter()
        .find(|n| n["label"] == label)
        .unwrap_or_else(|| panic!("no number {label:?} in {rep}"))
}

#[test]
fn build_sweedler_gives_four_dimensional_json() {
    let o = run(&["build", "sweedler4"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 4);
    assert_eq!(v["basis"], serde_json::json!(["1", "g", "x", "gx"]));
}

#[test]
fn build_double_gives_sixteen_dimensional_json() {
    let o = run(&["build", "double:sweedler4"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 16);
}

#[test]
fn unknown_name_is_an_input_error() {
    let o = run(&["build", "nosuch"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("nosuch"));
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_name_is_an_input_error() {
    assert_eq!(code(&run(&["build"])), 2);
    assert_eq!(code(&run(&["check", "hopf"])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["check", "bogus", "sweedler4"])), 2);
    assert_eq!(code(&run(&["repro", "lemma-9.9"])), 2);
}

#[test]
fn build_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h4.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&run(&["build", "sweedler4", "--out", p])), 0);
    let again = run(&["build", "--json", p]);
    assert_eq!(code(&again), 0);
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let second: Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(first, second);
    assert_eq!(code(&run(&["check", "hopf", "--json", p])), 0);
}

#[test]
fn corrupt_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"dim\": 4").unwrap();
    let o = run(&["check", "hopf", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sweedler_is_hopf() {
    let o = run(&["check", "hopf", "sweedler4"]);
    assert_eq!(code(&o), 0);
    let rep = report(&o);
    assert!(rep["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert!(rep["timing_ms"].is_u64());
}

#[test]
fn canonical_element_is_quasitriangular() {
    assert_eq!(code(&run(&["check", "qt", "double:sweedler4"])), 0);
}

#[test]
fn double_is_not_triangular() {
    let o = run(&["check", "triangular", "double:sweedler4"]);
    assert_eq!(code(&o), 1);
    assert_eq!(check(&report(&o), "triangular")["passed"], false);
    assert!(stderr(&o).contains("triangular: fail"));
}

#[test]
fn group_algebra_sign_element_is_triangular() {
    assert_eq!(code(&run(&["check", "triangular", "c2"])), 0);
}

#[test]
fn weak_r_on_prime_field() {
    assert_eq!(code(&run(&["--field", "p:5", "check", "weak-r", "c2"])), 0);
}

#[test]
fn dual_has_no_default_structure() {
    assert_eq!(code(&run(&["check", "qt", "dual:sweedler4"])), 2);
    assert_eq!(code(&run(&["check", "hopf", "dual:sweedler4"])), 0);
}

#[test]
fn characteristic_two_is_refused() {
    assert_eq!(code(&run(&["--field", "p:2", "build", "sweedler4"])), 2);
    assert_eq!(code(&run(&["--field", "p:9", "build", "c2"])), 2);
    assert_eq!(code(&run(&["--field", "p:7", "repro", "lemma-2.1"])), 2);
}

#[test]
fn eval_multiplication_then_antipode() {
    let o = run(&["eval", "m ; S", "--algebra", "sweedler4"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("H4⊗H4 → H4\n"), "{text}");
}

#[test]
fn eval_counit_law_is_identity() {
    let o = run(&["eval", "cm ; (cu * id[H])", "--algebra", "sweedler4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "H4 → H4\n  [1] <- [1] : 1\n  [g] <- [g] : 1\n  [x] <- [x] : 1\n  [gx] <- [gx] : 1\n"
    );
}

#[test]
fn eval_braid_uses_the_default_structure() {
    let o = run(&["eval", "braid[V,V] ; braid[V,V]", "--algebra", "c2"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn eval_errors_carry_a_location() {
    let o = run(&["eval", "m *"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 1, column 4"), "{}", stderr(&o));
    let o = run(&["eval", "m ; m"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("column 5"), "{}", stderr(&o));
    assert_eq!(code(&run(&["eval", "m ; nope"])), 2);
}

#[test]
fn reports_are_byte_deterministic_without_timing() {
    let a = run(&["--no-timing", "check", "qt", "double:sweedler4"]);
    let b = run(&["--no-timing", "check", "qt", "double:sweedler4"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(report(&a)["timing_ms"].is_null());
    let a = run(&["eval", "(S * S) ; swap[H,H] ; m"]);
    let b = run(&["eval", "(S * S) ; swap[H,H] ; m"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn canonical_pairings_are_reproduced() {
    let o = run(&["repro", "lemma-2.1"]);
    assert_eq!(code(&o), 0);
    let rep = report(&o);
    assert_eq!(number(&rep, "⟨[b]⁻¹, (x⊗ε)⊗(ε⊗e_x)⟩")["value"], "0/1");
    assert_eq!(number(&rep, "⟨[b]₂₁, (x⊗ε)⊗(ε⊗e_x)⟩")["value"], "1/1");
}

#[test]
fn xi_targets_pass() {
    let o = run(&["repro", "theorem-1.4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

/// The coaction values are reported exactly as computed, together with the strict braiding.
#[test]
fn braided_double_report_lists_the_coaction_values() {
    let o = run(&["repro", "example-2.2"]);
    let rep = report(&o);
    let expected_failures = ["⟨φ(e_gx⊗1), (x⊗ε)⊗(gx⊗e_x)⟩", "coefficient of 1⊗(e_1⊗1) in (x⊗id)ψ(e_x⊗g)"];
    for label in expected_failures {
        let n = number(&rep, label);
        assert!(n["expected"].is_string());
        assert!(n["value"].is_string());
    }
    assert_eq!(number(&rep, "⟨1⊗(e_gx⊗1), (x⊗ε)⊗(gx⊗e_x)⟩")["value"], "0/1");
    assert_eq!(check(&rep, "R_B₂₁·R_B ≠ 1⊗1")["passed"], true);
    let all_pass = rep["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true);
    assert_eq!(code(&o), if all_pass { 0 } else { 1 });
}
