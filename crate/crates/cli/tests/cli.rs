use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kapollo")).args(args).output().unwrap()
}

#[test]
fn arrange_is_deterministic_across_workers() {
    let a = run(&["--workers", "1", "arrange", "--disc", "-7", "--max-curv", "10"]);
    let b = run(&["--workers", "3", "arrange", "--disc", "-7", "--max-curv", "10"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pack_writes_to_output_file() {
    let path = std::env::temp_dir().join(format!("kapollo-cli-{}.jsonl", std::process::id()));
    let p = path.to_str().unwrap();
    let out = run(&["pack", "--disc", "-8", "--kind", "bounded", "--max-curv", "20", "-o", p]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let stdout = run(&["pack", "--disc", "-8", "--kind", "bounded", "--max-curv", "20"]).stdout;
    assert_eq!(text.as_bytes(), stdout.as_slice());
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["arrange", "--disc", "-3"]).status.code(), Some(2));
    assert_eq!(run(&["pack", "--disc", "-7", "--base", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["residues"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let e = run(&["arrange", "--disc", "-12"]);
    assert!(String::from_utf8_lossy(&e.stderr).contains("-12"));
}

#[test]
fn topograph_and_verify_succeed() {
    let t = run(&["topograph", "--depth", "0"]);
    assert_eq!(t.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&t.stdout).contains("\"passed\": true"));
    let v = run(&["verify", "--disc", "-8"]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stdout));
}

#[test]
fn residues_csv() {
    let r = run(&["residues", "--disc", "-19", "--bound", "60", "--kind", "strip", "--csv"]);
    assert_eq!(r.status.code(), Some(0));
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.contains("residue,count"));
}
