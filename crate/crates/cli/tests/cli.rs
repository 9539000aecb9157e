use std::path::PathBuf;
use std::process::{Command, Output};

fn cl2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cl2")).args(args).env("CL2_SEED", "7").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

#[test]
fn decide_exit_codes() {
    let o = cl2(&["decide", "P & P -> P"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "provable"));
    let o = cl2(&["decide", "P -> P & P"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "unprovable"));
    assert_eq!(code(&cl2(&["decide", "p &"])), 2);
    assert_eq!(code(&cl2(&["decide", "P", "--system", "cl1"])), 2);
    let o = cl2(&["decide", "p | ~p", "--system", "cl1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["provable"], true);
}

#[test]
fn decide_trace_lists_subgoals() {
    let o = cl2(&["decide", "(p * q) -> (p * q)", "--trace"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().filter(|l| l.trim_start().starts_with('✓')).count() >= 2, "{}", stdout(&o));
}

#[test]
fn prove_then_check_round_trip() {
    let o = cl2(&["prove", "P & P -> P", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let path = scratch("proof.json");
    std::fs::write(&path, o.stdout).unwrap();
    let o = cl2(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("valid CL2 proof"));
    // A CL2 proof using rule (c) is not a CL2° proof.
    assert_eq!(code(&cl2(&["check", path.to_str().unwrap(), "--system", "cl2circ"])), 1);

    let o = cl2(&["prove", "P & P -> P", "--system", "cl2circ", "--format", "json"]);
    std::fs::write(&path, o.stdout).unwrap();
    assert_eq!(code(&cl2(&["check", path.to_str().unwrap(), "--system", "cl2circ"])), 0);

    assert_eq!(code(&cl2(&["prove", "P -> P & P"])), 1);
    assert_eq!(code(&cl2(&["check", "/nonexistent/proof.json"])), 2);
}

#[test]
fn play_random_and_scripted() {
    let o = cl2(&["play", "P & P -> P", "--adversary", "random", "--json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["winner"], "T");

    let script = scratch("script.txt");
    std::fs::write(&script, "2.1\n").unwrap();
    let arg = format!("script:{}", script.display());
    let o = cl2(&["play", "--formula", "P & P -> P", "--interp", "molecule(m=1,leaves=F)", "--adversary", &arg]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("winner: ⊤\n"), "{}", stdout(&o));

    assert_eq!(code(&cl2(&["play", "P -> P & P"])), 1);
    assert_eq!(code(&cl2(&["play", "P -> P", "--interp", "no-such-preset"])), 2);
}

#[test]
fn play_reads_interpretation_files() {
    let path = scratch("interp.json");
    std::fs::write(&path, r#"{"elementary": {"p": "F"}, "general": {"P": "irregular2"}}"#).unwrap();
    let o = cl2(&["play", "p | ~p | (P -> P)", "--interp", path.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn verify_passes_for_provable_formulas() {
    let o = cl2(&["verify", "P & P -> P", "--interp-family", "molecules:m=2", "--exhaustive"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    let o = cl2(&["verify", "--formula", "(p * q) -> (p * q)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bot_wins"], 0);
    assert_eq!(v["interpretations"], 4);
    assert_eq!(code(&cl2(&["verify", "P -> P & P"])), 1);
}

#[test]
fn refute_writes_certificate() {
    let out = scratch("cert.json");
    let o = cl2(&["refute", "P -> P & P", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["cl1_unprovable"], true);
    assert_eq!(v["floor_roundtrip"], true);
    let o = cl2(&["refute", "P & P -> P"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("not refutable"));
    assert_eq!(code(&cl2(&["refute", "P -> P & P", "--m", "lots"])), 2);
}

#[test]
fn lemma_suites() {
    let o = cl2(&["lemmas", "prefixation", "--cases", "50"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "PASS prefixation (50 cases, seed 7)");
    let o = cl2(&["lemmas", "all", "--cases", "20", "--seed", "11", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 13);
    assert!(v.as_array().unwrap().iter().all(|r| r["passed"] == true && r["seed"] == 11));
    assert_eq!(code(&cl2(&["lemmas", "bogus"])), 2);
}
