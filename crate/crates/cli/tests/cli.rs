//! Black-box tests of the command-line interface: output shapes and the
//! exit-code contract (0 ok/match, 1 mismatch, 2 usage, 3 solver).

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gramsos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn bounds_table_prints_all_rows() {
    let out = run(&["bounds", "--table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for row in [
        "3    6             3            10            4            4",
        "4    4             4            10            5            5",
        "4    6            13            20            8           11",
        "5    4             9            15            7           11",
        "6    4            15            21           11           15",
    ] {
        assert!(text.contains(row), "missing row {:?} in:\n{}", row, text);
    }
}

#[test]
fn bounds_single_case() {
    let out = run(&["bounds", "-n", "4", "--deg", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("13"));
}

#[test]
fn bounds_rejects_odd_degree() {
    let out = run(&["bounds", "-n", "3", "--deg", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_json_round_trips() {
    let out = run(&["bounds", "--table", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 5);
    assert_eq!(rows[2]["n_minus_one"], 13);
}

#[test]
fn hilbert_power_ideal_row() {
    let out = run(&["hilbert", "-n", "3", "x1^3,x2^3,x3^3", "--kmax", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1 3 6 7 6 3 1"));
}

#[test]
fn hilbert_with_extra_generator() {
    let out = run(&["hilbert", "-n", "3", "x1^3,x2^3,x3^3,x1^2*x2", "--kmax", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1 3 6 6 4 1 0"));
}

#[test]
fn hilbert_kmax_zero() {
    let out = run(&["hilbert", "-n", "3", "x1^3,x2^3,x3^3", "--kmax", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim().ends_with('1'));
}

#[test]
fn hilbert_rejects_garbage() {
    let out = run(&["hilbert", "-n", "3", "x1^3,+++", "--kmax", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn examples_list_names_thirteen() {
    let out = run(&["examples", "list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 13);
}

#[test]
fn unknown_format_is_usage_error() {
    let out = run(&["bounds", "--table", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_missing_file_is_usage_error() {
    let out = run(&["analyze", "/nonexistent/input.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_needs_exactly_one_input() {
    let out = run(&["analyze"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_file_reports_boundary_json() {
    let dir = std::env::temp_dir();
    let path = dir.join("cli_test_singleton.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "n=2").unwrap();
    writeln!(f, "x1^2").unwrap();
    drop(f);
    let out = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["on_boundary"], true);
    assert_eq!(doc["max_rank"], 1);
    assert_eq!(doc["unique_point"], true);
    assert_eq!(doc["seed"], 42);
}

#[test]
fn analyze_example_with_certificate() {
    let out = run(&["analyze", "--example", "reznick46", "--certify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["max_rank"], 4);
    assert_eq!(doc["certificate"]["psd_proved"], true);
    assert_eq!(doc["certificate"]["kernel"].as_array().unwrap().len(), 4);
}

#[test]
fn examples_run_matches_published_verdict() {
    let out = run(&["examples", "run", "reznick46"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("yes"));
}

#[test]
fn examples_run_unknown_key() {
    let out = run(&["examples", "run", "no-such-example"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dump_f_prints_exact_expansion() {
    let out = run(&["analyze", "--example", "reznick46", "--dump-f"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("9/4*x1^6"));
}
