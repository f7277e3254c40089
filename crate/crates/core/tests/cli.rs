//! Runs the `cfp` binary end to end.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn cfp(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cfp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cfp");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRIANGLE: &str = r#"{"points":[{"sign":1,"weights":[1,2]},{"sign":1,"weights":[1,2]},{"sign":-1,"weights":[1,1]}]}"#;

#[test]
fn dot_from_trace_matches_golden() {
    let trace = golden("triangle_trace.json");
    let o = cfp(&["dot", "--trace", trace.to_str().unwrap()], "");
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(golden("triangle.dot")).unwrap()
    );
}

#[test]
fn dot_from_data_matches_golden() {
    let o = cfp(&["dot", "--data", "-"], TRIANGLE);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(golden("triangle.dot")).unwrap()
    );
}

#[test]
fn exit_codes() {
    assert_eq!(cfp(&["check", "-"], TRIANGLE).status.code(), Some(0));
    let bad = r#"{"points":[{"sign":1,"weights":[1,2]},{"sign":-1,"weights":[1,3]}]}"#;
    let o = cfp(&["check", "-"], bad);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(r#""kind":"odd_weight_multiplicity","weight":2"#));
    let o = cfp(
        &["check", "-"],
        r#"{"points":[{"sign":2,"weights":[1,2]}]}"#,
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(
        cfp(&["check", "/nonexistent/file.json"], "").status.code(),
        Some(2)
    );
}

#[test]
fn trace_round_trips_through_graph() {
    let o = cfp(&["trace", "-"], TRIANGLE);
    assert!(o.status.success());
    let o = cfp(&["graph", "--trace", "-"], &stdout(&o));
    assert!(o.status.success());
    let o = cfp(&["graph", "--graph", "-"], &stdout(&o));
    assert!(o.status.success());
    assert!(stdout(&o).contains(r#""result":"realizable""#));
}

#[test]
fn enumerate_is_job_independent() {
    let args = [
        "enumerate",
        "--points",
        "5",
        "--max-weight",
        "6",
        "--with-traces",
    ];
    let one = cfp(&args, "");
    let four = cfp(&[&args[..], &["--jobs", "4"]].concat(), "");
    assert!(one.status.success() && four.status.success());
    assert_eq!(stdout(&one), stdout(&four));
    assert!(stdout(&one).lines().all(|l| l.starts_with(r#"{"points":"#)));
}

#[test]
fn invariants_report() {
    let cp2 = r#"{"points":[{"sign":1,"weights":[1,2]},{"sign":-1,"weights":[1,1]},{"sign":1,"weights":[1,2]}]}"#;
    let o = cfp(&["invariants", "-"], cp2);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["signature"], 1);
    assert_eq!(v["series_constant"], 1);
}

#[test]
fn spectrum_output() {
    let o = cfp(&["spectrum", "--points", "4", "--max-weight", "4"], "");
    assert_eq!(stdout(&o).trim(), "[-2,0,2]");
}
