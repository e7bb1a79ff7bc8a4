//! The installed binary: header records, exit codes and reproducibility.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_arakelov"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn header_then_rows() {
    let (code, out) = run(&["arith-hilbert", "--t", "2", "--d", "1", "--ambient", "--seed", "9"]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["record"], "header");
    assert_eq!(lines[0]["seed"], 9);
    assert_eq!(lines[0]["config"]["d"], 1);
    let v = lines[1]["value"].as_f64().unwrap();
    assert!((v - 1.5 * 3f64.ln()).abs() < 1e-12);
}

#[test]
fn missing_file_is_a_parse_error() {
    let (code, _) = run(&["hilbert", "--d", "2", "--scheme", "/nonexistent/scheme.json"]);
    assert_eq!(code, 2);
}

#[test]
fn bounds_suite_is_reproducible() {
    let args = ["bounds", "--d", "2", "--samples", "4000", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn transcendence_table() {
    let (code, out) = run(&["transcendence", "--d", "10", "--h", "10", "--seed", "7", "--out", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "D,H,achieved,rhs_paper,ratio");
    let fields: Vec<f64> = rows[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(fields[..2], [10.0, 10.0]);
    assert!(fields[2] >= 50.0);
}
