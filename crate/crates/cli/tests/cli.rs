use std::io::Write;
use std::process::{Command, Output, Stdio};

use rigidity_core::{double_banana, ComparisonRecord, Multigraph, RigidityVerdict, ScanReport};

fn rigidity(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rigidity"))
        .args(args)
        .env_remove("RIGIDITY_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn banana_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(double_banana().to_edge_list_json().as_bytes()).unwrap();
    f
}

#[test]
fn banana_dump_round_trips() {
    let out = rigidity(&["banana"], "");
    assert_eq!(out.status.code(), Some(0));
    let g: Multigraph = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(g, double_banana());
}

#[test]
fn banana_exit_codes() {
    let f = banana_file();
    let path = f.path().to_str().unwrap();
    let rank = rigidity(&["--dim", "3", "rank", path], "");
    assert_eq!(rank.status.code(), Some(1));
    let v: RigidityVerdict = serde_json::from_slice(&rank.stdout).unwrap();
    assert_eq!((v.rank, v.flex_dim), (17, 1));

    assert_eq!(rigidity(&["--dim", "3", "theorem", path], "").status.code(), Some(0));

    let cmp = rigidity(&["--dim", "3", "compare", path], "");
    assert_eq!(cmp.status.code(), Some(3));
    let r: ComparisonRecord = serde_json::from_slice(&cmp.stdout).unwrap();
    assert!(r.stress_circuit.is_some());
}

#[test]
fn seed_from_environment() {
    let run = |seed: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rigidity"));
        cmd.args(args).env_remove("RIGIDITY_SEED");
        if let Some(s) = seed {
            cmd.env("RIGIDITY_SEED", s);
        }
        let out = cmd.stdin(Stdio::null()).output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_default();
        (out.status.code(), v)
    };
    // Empty stdin is not a graph.
    assert_eq!(run(Some("77"), &["rank"]).0, Some(2));
    assert_eq!(run(Some("x"), &["banana"]).0, Some(2));

    let f = banana_file();
    let p = f.path().to_str().unwrap();
    let env_seed = run(Some("77"), &["--dim", "3", "rank", p]).1;
    assert_eq!(env_seed["seed"], 77);
    let flag_wins = run(Some("77"), &["--dim", "3", "--seed", "5", "rank", p]).1;
    assert_eq!(flag_wins["seed"], 5);
}

#[test]
fn scan_corpus_file_and_enumeration() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "Bw\nC~\nCr").unwrap();
    let out = rigidity(&["scan", f.path().to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    let r: ScanReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.corpus_size, 3);
    assert_eq!(r.agreements + r.not_applicable, 3);

    let a = rigidity(&["scan", "--enumerate", "3-5", "--jobs", "1"], "");
    let b = rigidity(&["scan", "--enumerate", "3-5", "--jobs", "3"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let banana = rigidity(&["--dim", "3", "scan"], &double_banana().to_edge_list_json());
    assert_eq!(banana.status.code(), Some(3));
}

#[test]
fn pin_named_cases() {
    let k3 = rigidity(&["pin", "--path", "0,1"], "Bw");
    assert_eq!(k3.status.code(), Some(0), "{}", String::from_utf8_lossy(&k3.stderr));
    let k4 = rigidity(&["--dim", "3", "pin", "--path", "0,1,2", "--format", "text"], "C~");
    assert_eq!(k4.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&k4.stdout).contains("verified: true"));

    let wrong_len = rigidity(&["--dim", "3", "pin", "--path", "0,1"], "C~");
    assert_eq!(wrong_len.status.code(), Some(2));
    let banana = rigidity(&["--dim", "3", "pin"], &double_banana().to_edge_list_json());
    assert_eq!(banana.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rigidity(&["--dim", "1", "rank"], "Bw").status.code(), Some(2));
    assert_eq!(rigidity(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(rigidity(&["rank", "/nonexistent/graph.g6"], "").status.code(), Some(2));
}
