use std::path::Path;
use std::process::Command;

use klinkage_cli::format::{DigraphFile, PathSystemFile};
use klinkage_cli::{run, EXIT_BUDGET, EXIT_HYPOTHESIS, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

fn klinkage(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["klinkage"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

fn bin(dir: &Path, args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_klinkage")).args(args).current_dir(dir).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap() + &String::from_utf8(o.stderr).unwrap())
}

#[test]
fn circulant_kappa_is_three() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bin(dir.path(), &["gen", "--family", "circulant", "--n", "7", "-o", "c.json"]).0, EXIT_OK);
    let (code, out) = bin(dir.path(), &["check", "-i", "c.json", "--kappa"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kappa"], 3);
}

#[test]
fn transitive_tournament_violates_hypothesis() {
    let dir = tempfile::tempdir().unwrap();
    bin(dir.path(), &["gen", "--family", "transitive", "--n", "12", "-o", "t.json"]);
    let (code, out) = bin(dir.path(), &["solve", "-i", "t.json", "--class", "semicomplete", "--pairs", "11:0,10:1"]);
    assert_eq!(code, EXIT_HYPOTHESIS);
    assert!(out.contains("κ < 6"), "{out}");
}

#[test]
fn tampered_path_system_fails() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    bin(p, &["gen", "--family", "semicomplete", "--n", "40", "--p", "0.7", "--seed", "2", "-o", "d.json"]);
    let (code, _) = bin(
        p,
        &["solve", "-i", "d.json", "--class", "semicomplete", "--pairs", "0:1,2:3", "--no-enforce", "--paths-out", "ps.json"],
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(bin(p, &["verify", "-i", "d.json", "--paths", "ps.json"]).0, EXIT_OK);

    let ps: PathSystemFile = serde_json::from_str(&std::fs::read_to_string(p.join("ps.json")).unwrap()).unwrap();
    let arc = ps.paths.iter().find_map(|q| q.windows(2).next().map(|w| (w[0], w[1]))).unwrap();
    let mut d: DigraphFile = serde_json::from_str(&std::fs::read_to_string(p.join("d.json")).unwrap()).unwrap();
    d.arcs.retain(|&a| a != arc);
    std::fs::write(p.join("t.json"), serde_json::to_string(&d).unwrap()).unwrap();
    let (code, out) = bin(p, &["verify", "-i", "t.json", "--paths", "ps.json"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.contains("arc_membership"), "{out}");
}

#[test]
fn seed_is_echoed_and_output_is_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    bin(p, &["gen", "--family", "tournament", "--n", "15", "--seed", "9", "-o", "a.json", "--dot", "a.dot"]);
    bin(p, &["gen", "--family", "tournament", "--params", "n=15", "--seed", "9", "-o", "b.json"]);
    let a = std::fs::read_to_string(p.join("a.json")).unwrap();
    assert_eq!(a, std::fs::read_to_string(p.join("b.json")).unwrap());
    let file: DigraphFile = serde_json::from_str(&a).unwrap();
    assert_eq!(file.seed, Some(9));
    let mut sorted = file.arcs.clone();
    sorted.sort();
    assert_eq!(sorted, file.arcs);
    assert_eq!(klinkage_cli::format::to_json(&file), a);
    assert!(std::fs::read_to_string(p.join("a.dot")).unwrap().starts_with("digraph D {"));
}

#[test]
fn usage_and_format_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(bin(p, &["frobnicate"]).0, EXIT_USAGE);
    std::fs::write(p.join("bad.json"), "{\"n\": 3,\n \"arcs\": [[0, 1], [1, 1]]}").unwrap();
    let (code, out) = bin(p, &["check", "-i", "bad.json"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("arcs") && out.contains("self-loop"), "{out}");
    std::fs::write(p.join("trunc.json"), "{\"n\": 3,\n \"arcs\": [[0, 1]").unwrap();
    let (code, out) = bin(p, &["check", "-i", "trunc.json"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("line 2"), "{out}");
    assert_eq!(bin(p, &["solve", "-i", "trunc.json", "--class", "lqt", "--pairs", "0-1"]).0, EXIT_USAGE);
}

#[test]
fn oracle_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    bin(p, &["gen", "--family", "prop2", "--k", "3", "-o", "p.json"]);
    assert_eq!(bin(p, &["oracle", "-i", "p.json", "--k", "3"]).0, EXIT_NEGATIVE);
    assert_eq!(bin(p, &["oracle", "-i", "p.json"]).0, EXIT_NEGATIVE);
    bin(p, &["gen", "--family", "complete", "--n", "6", "-o", "k.json"]);
    assert_eq!(bin(p, &["oracle", "-i", "k.json", "--k", "3"]).0, EXIT_OK);
    assert_eq!(bin(p, &["oracle", "-i", "k.json", "--k", "3", "--budget", "1"]).0, EXIT_BUDGET);
}

#[test]
fn composition_and_lqt_classes_solve() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    bin(p, &["gen", "--family", "composition", "--h", "12", "--part-size", "3", "--p", "0.8", "--parts-kind", "random", "-o", "c.json"]);
    let (code, out) = bin(p, &["solve", "-i", "c.json", "--class", "composition", "--pairs", "0:5,9:14", "--no-enforce"]);
    assert_eq!(code, EXIT_OK, "{out}");
    bin(p, &["gen", "--family", "qt", "--h", "20", "--part-size", "3", "--seed", "1", "-o", "q.json"]);
    let (code, out) = bin(p, &["solve", "-i", "q.json", "--class", "lqt", "--pairs", "0:7", "--threshold", "5", "--no-enforce"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out) = bin(p, &["solve", "-i", "q.json", "--class", "lqt", "--pairs", "0:7"]);
    assert_eq!(code, EXIT_HYPOTHESIS, "{out}");
}

#[test]
fn in_process_run_matches_binary() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = klinkage(&["gen", "--family", "circulant", "--n", "5", "--seed", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, bin(dir.path(), &["gen", "--family", "circulant", "--n", "5", "--seed", "4"]).1);
}
