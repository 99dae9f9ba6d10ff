use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ahlfors")).args(args).output().unwrap()
}

fn config_file(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn h0_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(&dir, "e3.json", r#"{"points": ["0", "1", "inf"]}"#);
    let h0 = run(&["h0", &cfg]);
    assert_eq!(h0.status.code(), Some(0));
    let q3 = run(&["q3", &cfg]);
    assert_eq!(q3.status.code(), Some(0));
    let (a, b) = (json(&h0), json(&q3));
    assert!((f(&a["H0"]) - f(&b["H0"])).abs() < 1e-8);
    assert_eq!(b["status"], "exact");
    let w = &a["winners"][0];
    assert_eq!(w["Q"], 2);
    assert_eq!(w["theta"].as_array().unwrap().len(), 2);
    for key in ["k", "L", "A", "nbar", "R", "degmax"] {
        assert!(!w[key].is_null(), "{key}");
    }
}

#[test]
fn output_is_byte_stable_with_17_digits() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(&dir, "c.json", r#"{"points": ["0", "1+0.3i", "-0.4+0.9i", [0, 0, 1]]}"#);
    let out = dir.path().join("r.json");
    let a = run(&["h0", &cfg]);
    let b = run(&["h0", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(b.status.code(), Some(0));
    assert!(b.stdout.is_empty());
    assert_eq!(a.stdout, fs::read(&out).unwrap());
    let text = String::from_utf8(a.stdout).unwrap();
    let h0 = text.lines().find(|l| l.contains("\"H0\"")).unwrap();
    let mantissa = h0.split(':').nth(1).unwrap().trim().trim_end_matches(',').split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 17, "{h0}");
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("two.json", r#"{"points": ["0", "1"]}"#),
        ("dup.json", r#"{"points": ["0", "1", "1+0i"]}"#),
        ("junk.json", "{"),
    ] {
        let cfg = config_file(&dir, name, body);
        assert_eq!(run(&["h0", &cfg]).status.code(), Some(1), "{name}");
    }
    assert_eq!(run(&["h0", "/nonexistent/file.json"]).status.code(), Some(1));
    let four = config_file(&dir, "four.json", r#"{"points": ["0", "1", "2", "3"]}"#);
    assert_eq!(run(&["q3", &four]).status.code(), Some(1));
    let three = config_file(&dir, "three.json", r#"{"points": ["0", "1", "2"]}"#);
    assert_eq!(run(&["h0", &three, "--tol", "0"]).status.code(), Some(1));
    assert_eq!(run(&["h0", &three, "--qprime-min", "3", "--qprime-max", "2"]).status.code(), Some(1));
}

#[test]
fn theta_scan() {
    let out = run(&["scan", "--family", "theta", "--grid", "1001"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,L,A,h"));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!((first[3] - 4.0).abs() < 1e-12);
    assert_eq!(text.lines().count(), 1002);
}

#[test]
fn disk_scan_turns_at_the_critical_diameter() {
    let out = run(&["scan", "--family", "disk", "--q", "3", "--nbar", "0", "--grid", "20001"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<Vec<f64>> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    let turns: Vec<f64> = rows
        .windows(3)
        .filter(|w| (w[1][3] - w[0][3]) < 0.0 && (w[2][3] - w[1][3]) >= 0.0)
        .map(|w| w[1][0])
        .collect();
    assert_eq!(turns.len(), 1);
    assert!((turns[0] - 2.0 * (1.0f64 / 3.0).acos()).abs() < 2e-4, "{turns:?}");
}

#[test]
fn two_point_grid_gives_endpoints() {
    let out = run(&["scan", "--family", "theta", "--grid", "2", "--format", "json"]);
    let v = json(&out);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(f(&rows[0]["theta"]), 0.0);
    assert_eq!(f(&rows[1]["theta"]), PI / 2.0);
    assert_eq!(run(&["scan", "--family", "bogus"]).status.code(), Some(1));
    assert_eq!(run(&["scan", "--family", "theta", "--grid", "1"]).status.code(), Some(1));
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = run(&["verify", "two-circle", "--trials", "50", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["suite"], "two-circle");
    assert_eq!(v[0]["passed"], true);
    assert_eq!(v[0]["properties"][0]["trials"], 50);
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(1));
    let again = run(&["verify", "two-circle", "--trials", "50", "--seed", "3"]);
    assert_eq!(out.stdout, again.stdout);
}
