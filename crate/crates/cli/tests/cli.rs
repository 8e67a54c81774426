use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_robotgames"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_accepts_corpus_and_rejects_broken_files() {
    assert_eq!(run(&["validate", "corpus:zero-at-2"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let lone = dir.path().join("lone.m");
    fs::write(&lone, "states: s t h\ninit: s\nsink: h\ntrans: s c1-- t\ntrans: t c1++ s\n").unwrap();
    assert_eq!(run(&["validate", lone.to_str().unwrap()]).status.code(), Some(1));
    let bad = dir.path().join("bad.m");
    fs::write(&bad, "states: s t\ninit: s\nsink: t\ntrans: s c3++ t\n").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "corpus:zero-at-2", "--scenario", "L9"]).status.code(), Some(2));
    assert_eq!(run(&["run", "corpus:no-such-machine"]).status.code(), Some(2));
}

#[test]
fn run_reports_the_outcome() {
    let o = run(&["run", "corpus:zero-at-2", "--max-steps", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ZeroZeroAt(2)"));
}

#[test]
fn reduce_writes_a_loadable_game_that_solve_reads() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rg.json");
    let o = run(&["reduce", "corpus:zero-at-2", "--to", "rg", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["solve", out.to_str().unwrap(), "--horizon", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("EveWinsWithin(2)"), "{}", stdout(&o));
    let first = fs::read(&out).unwrap();
    run(&["reduce", "corpus:zero-at-2", "--to", "rg", "-o", out.to_str().unwrap()]);
    assert_eq!(fs::read(&out).unwrap(), first);
}

#[test]
fn every_stage_can_be_emitted() {
    for stage in ["normalized", "flags", "rgs", "rg", "matrix"] {
        let o = run(&["reduce", "corpus:c2-bounce", "--to", stage]);
        assert_eq!(o.status.code(), Some(0), "{stage}");
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn verify_and_count_succeed_on_small_machines() {
    let o = run(&["verify", "corpus:zero-at-2", "--scenario", "L7", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok L7"));
    let o = run(&["count", "corpus:zero-at-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Adam 8 moves"));
}

#[test]
fn interactive_play_reads_indices_from_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let game = dir.path().join("g.json");
    fs::write(&game, r#"{"kind":"rg","adam":[{"x":"0","y":"0"}],"eve":[{"x":"-1","y":"0"}],"initial":{"x":"1","y":"0"}}"#)
        .unwrap();
    let mut child = bin()
        .args(["play", game.to_str().unwrap(), "--as", "eve", "--opponent", "zero"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x\n0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("enter a number"), "{text}");
    assert!(text.contains("Eve wins in round 1"), "{text}");
}
