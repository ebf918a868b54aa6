mod common;

use std::process::Command;

use fusion_center::cli::run;
use fusion_center::io::write_category;

const BIN: &str = env!("CARGO_BIN_EXE_fusion-center");

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut v = vec!["fusion-center"];
    v.extend_from_slice(args);
    run(v)
}

#[test]
fn ising_center_lists_five_simples() {
    let (code, out, err) = cli(&["center", "--builtin", "ising", "--field", "sqrt2"]);
    assert_eq!(code, 0, "{}", err);
    assert!(out.starts_with("5 simple central objects"));
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[4].contains("dim 4*sqrt2"), "{}", rows[4]);
}

#[test]
fn s3_validates() {
    let (code, out, _) = cli(&["validate", "--builtin", "vec_g", "--group", "s3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "0 violation(s)");
}

#[test]
fn s3_transposition_ideal() {
    let (code, out, _) =
        cli(&["ideal", "--builtin", "vec_g", "--group", "s3", "--object", "0,0,0,1,1,1", "--base-field", "Q"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "vars: x1..x18");
    assert_eq!(lines.len(), 79);
}

#[test]
fn binary_exit_codes() {
    let ok = Command::new(BIN).args(["info", "--builtin", "vec_g", "--group", "c3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad_group = Command::new(BIN).args(["info", "--builtin", "vec_g", "--group", "nope"]).output().unwrap();
    assert_eq!(bad_group.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_group.stderr).starts_with("error:"));
    let no_verb = Command::new(BIN).output().unwrap();
    assert_eq!(no_verb.status.code(), Some(1));
    let wrong_field = Command::new(BIN).args(["center", "--builtin", "ising", "--field", "Q"]).output().unwrap();
    assert_eq!(wrong_field.status.code(), Some(1));
}

#[test]
fn bad_object_is_invalid_input() {
    let (code, _, err) = cli(&["ideal", "--builtin", "vec_g", "--group", "s3", "--object", "1,2"]);
    assert_eq!(code, 1);
    assert!(err.contains("6 multiplicities"));
}

#[test]
fn output_is_deterministic() {
    for verb in ["center", "smatrix", "multtable"] {
        let a = cli(&[verb, "--builtin", "ising", "--seed", "3"]);
        let b = cli(&[verb, "--builtin", "ising", "--seed", "3"]);
        assert_eq!(a, b);
        let c = cli(&[verb, "--builtin", "ising", "--seed", "4", "--jobs", "2"]);
        assert_eq!(a.1, c.1, "{} depends on the seed", verb);
    }
}

#[test]
fn category_file_round_trip() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("ising.cat");
    std::fs::write(&path, write_category(&common::ising_sqrt2())).unwrap();
    let p = path.to_str().unwrap();
    let (code, from_file, err) = cli(&["multtable", "--file", p]);
    assert_eq!(code, 0, "{}", err);
    let (_, builtin, _) = cli(&["multtable", "--builtin", "ising"]);
    assert_eq!(from_file, builtin);
    let (code, out, _) = cli(&["validate", "--file", p]);
    assert_eq!((code, out.trim()), (0, "0 violation(s)"));
}

#[test]
fn failed_validation_exits_one() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("bad_pentagon.cat");
    let text = write_category(&common::ising_sqrt2()).replace("[[-1]]", "[[1]]");
    std::fs::write(&path, text).unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = cli(&["validate", "--file", p]);
    assert_eq!(code, 1);
    assert!(!out.starts_with("0 violation"));
    let (code, _, err) = cli(&["center", "--file", p]);
    assert_eq!(code, 1);
    assert!(err.contains("error"));
}

#[test]
fn quaternionic_simple_splits_with_multiplicity_two() {
    let (code, out, _) = cli(&["split", "--builtin", "vec_g", "--group", "q8", "--simple", "18"]);
    assert_eq!(code, 0);
    assert!(out.contains("simple 18:"));
    assert!(out.contains("    2 × 2·-1"), "{}", out);
}

#[test]
fn seed_from_environment_is_accepted() {
    let out = Command::new(BIN)
        .env(fusion_center::cli::SEED_ENV, "17")
        .args(["center", "--builtin", "vec_g", "--group", "c2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("4 simple central objects"));
}
