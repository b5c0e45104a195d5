mod common;

use std::process::{Command, Output};

use ntrans::{parse_quiver, validate};
use serde_json::Value;

use common::{data_path, read};

fn ntrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntrans")).args(args).env_remove("NTRANS_MAX_DEGREE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    data_path(name).display().to_string()
}

#[test]
fn koszul_json_for_a4rad2() {
    let o = ntrans(&["koszul", &data("a4rad2.quiver"), "--max-degree", "10", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "ntrans/1");
    assert_eq!(v["command"], "koszul");
    assert_eq!(v["p"], 1);
    assert_eq!(v["koszul_up_to"], 10);
}

#[test]
fn trivial_extension_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tilde.quiver");
    let o = ntrans(&["trivial-ext", &data("a4rad2.quiver"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), read("golden/a4rad2_trivial_ext.quiver"));
    let o = ntrans(&["koszul", out.to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["p"].as_u64(), v["q"].as_u64()), (Some(2), Some(3)));
}

#[test]
fn smash_and_truncation_match_goldens() {
    let o = ntrans(&["smash", &data("a4rad2.quiver"), "-v", "0", "--window", "1..4"]);
    assert_eq!(stdout(&o), read("golden/a4rad2_smash_window_1_4.quiver"));
    let o = ntrans(&["truncate-slice", &data("golden/a4rad2_smash_window_1_4.quiver"), "--slice", "1@1,2@1,3@1,4@1"]);
    assert_eq!(stdout(&o), read("golden/q2.quiver"));
    let o = ntrans(&["smash", &data("a4rad2.quiver"), "-v", "1"]);
    assert_eq!(stdout(&o), read("golden/a4rad2_smash_v1.quiver"));
}

#[test]
fn broken_relation_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.quiver");
    std::fs::write(&path, "field rational\nvertex 1 2\narrow a 1 2\narrow b 2 2\nrelation b.a - a\n").unwrap();
    let o = ntrans(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn field_override_keeps_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nofield.quiver");
    std::fs::write(&path, "vertex 1\narrow x 1 1\nrelation x.y\n").unwrap();
    let o = ntrans(&["validate", path.to_str().unwrap(), "--field", "gf7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&o.stderr));
    let o = ntrans(&["validate", &data("a4rad2.quiver"), "--field", "gf7", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["field"], "gf 7");
}

#[test]
fn exit_codes() {
    assert_eq!(ntrans(&["admissible", &data("disconnected.quiver")]).status.code(), Some(1));
    assert_eq!(ntrans(&["trivial-ext", &data("edge.quiver")]).status.code(), Some(1));
    assert_eq!(ntrans(&["koszul", &data("non_koszul.quiver"), "-D", "8"]).status.code(), Some(1));
    assert_eq!(ntrans(&["smash", &data("a4rad2.quiver"), "-v", "0"]).status.code(), Some(2));
    assert_eq!(ntrans(&["hammock", &data("a4rad2.quiver"), "--vertex", "9"]).status.code(), Some(2));
    assert_eq!(ntrans(&["dims", &data("missing.quiver")]).status.code(), Some(2));
    assert_eq!(ntrans(&["dims", &data("a4rad2.quiver"), "--max-degree", "0"]).status.code(), Some(2));
    assert_eq!(ntrans(&["--help"]).status.code(), Some(0));
    assert_eq!(ntrans(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ntrans(&["double-dual", &data("tilde_a4rad2.quiver")]).status.code(), Some(0));
}

#[test]
fn environment_sets_the_default_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_ntrans"))
        .args(["koszul", &data("loop.quiver"), "--json"])
        .env("NTRANS_MAX_DEGREE", "5")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["koszul_up_to"], 5);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["koszul", "tilde_a4rad2.quiver", "--json"],
        vec!["almost-split", "golden/q2.quiver", "--json"],
        vec!["dual", "tilde_a4rad2.quiver"],
        vec!["hammock", "golden/q2.quiver", "--vertex", "1@1", "--format", "dot"],
    ] {
        let mut args: Vec<String> = args.into_iter().map(String::from).collect();
        args[1] = data(&args[1]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(stdout(&ntrans(&refs)), stdout(&ntrans(&refs)));
    }
}

#[test]
fn emitted_quivers_reparse() {
    let cases: &[&[&str]] = &[
        &["dual", "tilde_a4rad2.quiver"],
        &["dual", "non_koszul.quiver"],
        &["trivial-ext", "tilde_a4rad2.quiver"],
        &["smash", "tilde_a4rad2.quiver", "-v", "3"],
        &["smash", "a3_gf7.quiver", "-v", "0", "--window", "-1..2"],
        &["truncate-slice", "golden/q2.quiver", "--slice", "1@2"],
    ];
    for case in cases {
        let mut args: Vec<String> = case.iter().map(|s| s.to_string()).collect();
        args[1] = data(&args[1]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = ntrans(&refs);
        assert_eq!(o.status.code(), Some(0), "{case:?}: {}", String::from_utf8_lossy(&o.stderr));
        let q = parse_quiver(&stdout(&o)).unwrap();
        assert!(validate(&q).is_empty(), "{case:?}");
    }
}

#[test]
fn reports_in_every_format() {
    for cmd in ["validate", "dims", "translation", "admissible", "koszul", "almost-split", "as-regular", "extendable"] {
        let o = ntrans(&[cmd, &data("tilde_a4rad2.quiver"), "--json"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{cmd}: {e}"));
        assert_eq!(v["command"], cmd);
        let o = ntrans(&[cmd, &data("tilde_a4rad2.quiver")]);
        assert!(!stdout(&o).is_empty(), "{cmd}");
    }
    let o = ntrans(&["export-dot", &data("a4rad2.quiver")]);
    assert_eq!(stdout(&o), read("golden/a4rad2.dot"));
    let o = ntrans(&["layers", &data("tilde_a4rad2.quiver"), "--vertex", "2"]);
    assert_eq!(stdout(&o), "0: S(2)\n1: S(1) + S(3)\n2: S(2)\n");
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ntrans::cli::run(["ntrans", "layers", &data("a4rad2.quiver"), "--vertex", "1"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), stdout(&ntrans(&["layers", &data("a4rad2.quiver"), "--vertex", "1"])));
}
