//! End-to-end tests of the command-line interface: exit codes, output
//! formats and determinism.

use std::process::{Command, Output};

const CUSP: &str = "y^2 - x^3";
const SMALL: &str = "(y^3 - x^4)^2 - x^9";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polar-branches"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn analyze_small_curve_passes() {
    let o = run(&["analyze", SMALL]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("characteristic: (6; 8, 11)"));
    assert!(s.contains("polars verified: 5/5 pass"));
    assert!(s.contains("threshold-semi-root(1)"));
    assert!(s.contains("irreducible-case-2"));
}

#[test]
fn analyze_single_polar_order() {
    let o = run(&["analyze", SMALL, "-k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("polar k = 2"));
    assert!(!s.contains("polar k = 1"));
    assert!(s.contains("ord 4 = 1 lc-zero + 3 lc-nonzero"));
}

#[test]
fn analyze_json_is_deterministic() {
    let a = run(&["analyze", CUSP, "--format", "json"]);
    let b = run(&["analyze", CUSP, "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "identical runs must emit identical bytes");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid json");
    assert_eq!(v["schema"], "polar-report/1");
    assert_eq!(v["characteristic"]["b"], serde_json::json!([2, 3]));
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["polars"][0]["verdicts"]["conservation"]["pass"], true);
}

#[test]
fn parse_errors_carry_positions_and_exit_2() {
    let o = run(&["analyze", "y^2 + % x"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("line 1, col 7"), "stderr: {e}");
}

#[test]
fn reducible_curve_exits_2() {
    let o = run(&["analyze", "y^2 - x^2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("irreducible"));
}

#[test]
fn out_of_range_order_exits_2() {
    let o = run(&["analyze", CUSP, "-k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("outside the valid range"));
}

#[test]
fn expect_char_gate() {
    let ok = run(&["analyze", CUSP, "--expect-char", "2,3"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["analyze", CUSP, "--expect-char", "3,4"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("VERIFICATION FAILED"));
}

#[test]
fn characteristic_subcommand() {
    let o = run(&["characteristic", SMALL]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("(6; 8, 11)"));
    assert!(s.contains("e = (6, 2, 1)"));
}

#[test]
fn predict_without_a_curve() {
    let o = run(&["predict", "--char", "6,8,11", "-k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("ord 3 = 0 lc-zero + 3 lc-nonzero"));
    assert!(s.contains("irreducible-case-2"));
    let bad = run(&["predict", "--char", "6,8,12"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn shape_subcommand() {
    let o = run(&["shape", "--n", "3", "--e", "2", "-k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a = 1, b = 0, d = 1"));
}

#[test]
fn tree_outputs() {
    let text = run(&["tree", SMALL]);
    assert_eq!(text.status.code(), Some(0));
    assert!(stdout(&text).contains("T_2 ball 3"));
    let dot = run(&["tree", SMALL, "--dot-stdout"]);
    assert_eq!(dot.status.code(), Some(0));
    let s = stdout(&dot);
    assert!(s.starts_with("digraph pseudoballs {"));
    assert_eq!(s.matches("->").count(), 4, "one root edge + three nested balls");
}

#[test]
fn exact_mode_on_rational_expansion() {
    let o = run(&["analyze", CUSP, "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    assert!(stdout(&o).contains("polars verified: 1/1 pass"));
}
