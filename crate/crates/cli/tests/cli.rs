//! End-to-end runs of the `arbor` binary: exit codes, stats determinism,
//! and generator output stability.

use std::path::Path;
use std::process::{Command, Output};

fn arbor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arbor"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn write_trace(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

/// Strips the wall-clock fields, leaving everything a rerun must reproduce.
fn normalize_stats(text: &str) -> String {
    let mut out = String::new();
    for line in text.lines() {
        if line.starts_with("p100_latency_ns") || line.starts_with("p99_latency_ns") {
            continue;
        }
        let mut tokens = line.split_whitespace().peekable();
        let mut kept = Vec::new();
        while let Some(token) = tokens.next() {
            if token == "elapsed_ns" {
                tokens.next();
                continue;
            }
            kept.push(token);
        }
        out.push_str(&kept.join(" "));
        out.push('\n');
    }
    out
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.trace");
    let b = dir.path().join("b.trace");
    for path in [&a, &b] {
        let out = arbor(&[
            "gen",
            "--kind",
            "forest-union",
            "--trace",
            path.to_str().unwrap(),
            "--n",
            "64",
            "--alpha",
            "2",
            "--ops",
            "500",
            "--seed",
            "7",
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text_a = std::fs::read(&a).unwrap();
    let text_b = std::fs::read(&b).unwrap();
    assert!(!text_a.is_empty());
    assert_eq!(text_a, text_b);
}

#[test]
fn star_churn_emits_the_canonical_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("star.trace");
    let out = arbor(&[
        "gen",
        "--kind",
        "star-churn",
        "--trace",
        path.to_str().unwrap(),
        "--n",
        "9",
        "--alpha",
        "1",
        "--ops",
        "16",
        "--seed",
        "0",
    ]);
    assert!(out.status.success());
    let mut want = String::from("n 9\n");
    for spoke in 1..9 {
        want.push_str(&format!("+ 0 {spoke}\n"));
    }
    for spoke in 1..9 {
        want.push_str(&format!("- 0 {spoke}\n"));
    }
    assert_eq!(std::fs::read_to_string(&path).unwrap(), want);
}

#[test]
fn run_reports_ok_and_stats_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.trace");
    let out = arbor(&[
        "gen",
        "--kind",
        "sliding-window",
        "--trace",
        trace.to_str().unwrap(),
        "--n",
        "32",
        "--alpha",
        "2",
        "--ops",
        "2000",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());

    let mut normalized = Vec::new();
    for name in ["s1.txt", "s2.txt"] {
        let stats = dir.path().join(name);
        let out = arbor(&[
            "run",
            "--trace",
            trace.to_str().unwrap(),
            "--algo",
            "spectrum",
            "--alpha",
            "2",
            "--beta",
            "2.0",
            "--check",
            "full",
            "--stats",
            stats.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(stdout.starts_with("ok: 2000 ops"), "unexpected stdout: {stdout}");
        assert!(stdout.contains("(satisfied)"), "unexpected stdout: {stdout}");
        normalized.push(normalize_stats(&std::fs::read_to_string(&stats).unwrap()));
    }
    assert_eq!(normalized[0], normalized[1]);
    assert!(normalized[0].contains("invariant_failures none"));
}

#[test]
fn queries_flow_through_run() {
    let dir = tempfile::tempdir().unwrap();
    let text = "n 4\n+ 0 1\n+ 1 2\na 0 1\na 0 3\nm\nw 2 3 5\nx 3 2\ny 2\n- 0 1\nm\n";
    let path = write_trace(dir.path(), "mixed.trace", text);
    let out = arbor(&["run", "--trace", &path, "--check", "full"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("ok: 10 ops"), "unexpected stdout: {stdout}");
}

#[test]
fn deleting_an_absent_edge_is_a_malformed_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(dir.path(), "bad.trace", "n 4\n- 0 1\n");
    let out = arbor(&["run", "--trace", &path]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("malformed trace at op 0"), "stderr: {stderr}");
}

#[test]
fn header_and_op_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["+ 0 1\n", "n 4\nz 0 1\n", "n 4\n+ 0 4\n", "n 4\n+ 1 1\n", "n 4\n+ 0\n"] {
        let path = write_trace(dir.path(), "bad.trace", text);
        let out = arbor(&["run", "--trace", &path]);
        assert_eq!(out.status.code(), Some(2), "accepted malformed trace: {text:?}");
    }
}

#[test]
fn bad_parameters_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(dir.path(), "ok.trace", "n 4\n+ 0 1\n");
    for args in [
        vec!["run", "--trace", &path, "--algo", "spectrum", "--beta", "1.0"],
        vec!["run", "--trace", &path, "--alpha", "0"],
        vec!["run", "--trace", &path, "--algo", "fancy"],
        vec!["run", "--trace", "/nonexistent/trace.txt"],
    ] {
        let out = arbor(&args);
        assert_eq!(out.status.code(), Some(2), "accepted {args:?}");
    }
}

#[test]
fn small_verify_comes_back_clean() {
    let out = arbor(&["verify", "--n", "3", "--ops", "6", "--seed", "0"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("verify: clean"), "stdout: {stdout}");
}
