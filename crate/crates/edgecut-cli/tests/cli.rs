use std::path::Path;
use std::process::{Command, Output};

fn edgecut(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgecut")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_then_mincut() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(edgecut(p, &["gen", "--kind", "barbell", "--q", "6", "--b", "2", "--out", "b.el"]).status.success());
    let out = edgecut(p, &["mincut", "b.el", "--witness", "w.txt"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "lambda=2");
    let witness = std::fs::read_to_string(p.join("w.txt")).unwrap();
    assert_eq!(witness.split_whitespace().count(), 6);
}

#[test]
fn json_report_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    edgecut(p, &["gen", "--kind", "cycle", "--n", "7", "--out", "c.el"]);
    let a = stdout(&edgecut(p, &["mincut", "c.el", "--json"]));
    let b = stdout(&edgecut(p, &["mincut", "c.el", "--json"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["answer"]["lambda"], 2);
    assert!(v["fingerprint"].as_str().unwrap().len() == 64);
}

#[test]
fn verify_reports_ok() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    edgecut(p, &["gen", "--kind", "clique", "--n", "8", "--out", "k.el"]);
    let out = edgecut(p, &["verify", "k.el", "--check", "mincut"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "ok");
}

#[test]
fn bad_usage_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(edgecut(dir.path(), &["mincut", "--bogus"]).status.code(), Some(2));
    assert_eq!(edgecut(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_file_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = edgecut(dir.path(), &["mincut", "nope.el"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn self_loop_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("l.el"), "0 1\n1 1\n").unwrap();
    assert_eq!(edgecut(dir.path(), &["mincut", "l.el"]).status.code(), Some(1));
}
