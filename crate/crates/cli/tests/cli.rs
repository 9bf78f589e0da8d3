use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn rdlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdlab"))
        .args(args)
        .env_remove("RDLAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const P7: &str = "7 6 0 1 1 2 2 3 3 4 4 5 5 6";
const K13: &str = "4 3 0 1 0 2 0 3";

#[test]
fn solve_path_with_dp() {
    let out = rdlab(&["solve", "--method", "dp", "--inline", P7, "--output", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["gamma_r"]["value"], 3);
    assert_eq!(v["gamma_ri"]["value"], 6);
    assert_eq!(v["gamma_r"]["method"], "treedp");
}

#[test]
fn solve_star_by_brute_force() {
    let out = rdlab(&["solve", "--method", "brute", "--inline", K13, "--output", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,method,gamma_r,gamma_ri\n4,brute,4,4\n");
}

#[test]
fn solve_reads_files_and_graph6() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# P4\n4 3\n0 1\n1 2\n2 3").unwrap();
    let path = file.path().to_str().unwrap();
    let out = rdlab(&["solve", "--input", path]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("gamma_r = 2"));

    let out = rdlab(&["solve", "--format", "graph6", "--inline", "Ch", "--output", "csv"]);
    assert_eq!(stdout(&out), "n,method,gamma_r,gamma_ri\n4,treedp,2,4\n");
}

#[test]
fn solve_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rdlab"))
        .args(["solve", "--input", "-", "--output", "csv"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(P7.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "n,method,gamma_r,gamma_ri\n7,treedp,3,6\n");
}

#[test]
fn exit_codes() {
    assert_eq!(rdlab(&["solve", "--inline", "not a graph"]).status.code(), Some(2));
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "3 1\n0 5").unwrap();
    let path = file.path().to_str().unwrap();
    assert_eq!(rdlab(&["solve", "--input", path]).status.code(), Some(2));
    assert_eq!(rdlab(&["solve", "--input", "/nonexistent/graph"]).status.code(), Some(2));
    let triangle = "3 3 0 1 1 2 0 2";
    assert_eq!(rdlab(&["solve", "--inline", triangle]).status.code(), Some(3));
    let brute = rdlab(&["solve", "--method", "brute", "--inline", triangle, "--output", "csv"]);
    assert!(brute.status.success());
    assert_eq!(rdlab(&["recognize", "--inline", triangle]).status.code(), Some(3));
    assert_eq!(rdlab(&["enumerate", "-n", "30"]).status.code(), Some(4));
    assert_eq!(rdlab(&["verify", "--claim", "oracle-dp", "--n-max", "25"]).status.code(), Some(4));
    assert_eq!(rdlab(&["generate", "--family", "H", "--budget", "9"]).status.code(), Some(2));
}

#[test]
fn recognize_examples() {
    let out = rdlab(&["recognize", "--family", "F", "--inline", "4 3 0 1 1 2 2 3", "--output", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "member");
    assert_eq!(v["trace"]["steps"].as_array().unwrap().len(), 0);

    let p6 = "6 5 0 1 1 2 2 3 3 4 4 5";
    let out = rdlab(&["recognize", "--family", "H", "--inline", p6]);
    assert_eq!(stdout(&out), "H: none\n");

    let ds23 = "7 6 0 1 0 2 0 3 1 4 1 5 1 6";
    let out = rdlab(&["recognize", "--family", "H", "--inline", ds23]);
    assert!(stdout(&out).starts_with("H: member\n"));

    let out = rdlab(&["recognize", "--inline", "5 4 0 1 0 2 0 3 0 4"]);
    assert_eq!(stdout(&out), "H: star-exception K_1,4\nF: none\n");
}

#[test]
fn check_reports_violations() {
    let p4 = "4 3 0 1 1 2 2 3";
    let ok = rdlab(&["check", "--inline", p4, "--property", "rds", "--set", "0,3"]);
    assert!(ok.status.success());
    let bad = rdlab(&["check", "--inline", p4, "--property", "dominating", "--set", "1", "--output", "json"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&bad)).unwrap();
    assert_eq!(v["violation"]["kind"], "undominated");
    assert_eq!(v["violation"]["vertex"], 3);
    let ridf = rdlab(&["check", "--inline", p4, "--property", "ridf", "--labels", "2 0 0 2"]);
    assert!(ridf.status.success());
    let missing = rdlab(&["check", "--inline", p4, "--property", "ridf", "--set", "1"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let dir_s = dir.path().to_str().unwrap();
    let out = rdlab(&["verify", "--claim", "theorem-F", "--n-max", "10", "--report-dir", dir_s]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("theorem-F.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["trees_per_n"]["10"], 106);

    assert!(rdlab(&["verify", "--claim", "sandwich", "--n-max", "8"]).status.success());
    let h3 = rdlab(&["verify", "--claim", "theorem-h", "--n-max", "3", "--output", "json"]);
    assert!(h3.status.success());
    let v: Value = serde_json::from_str(&stdout(&h3)).unwrap();
    assert_eq!(v["trees_checked"], 1);
}

#[test]
fn failing_claim_exits_one() {
    let out = rdlab(&["verify", "--claim", "theorem-F", "--n-min", "11", "--n-max", "11"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("theorem-F: FAIL"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let run = |workers: &str| {
        let dir = tempfile::tempdir().unwrap();
        let out = rdlab(&[
            "verify", "--claim", "lemmas-F", "--count", "40", "--budget", "13", "--seed", "9",
            "--workers", workers, "--report-dir", dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
        std::fs::read(dir.path().join("lemmas-F.json")).unwrap()
    };
    assert_eq!(run("1"), run("2"));
    assert_eq!(rdlab(&["verify", "--claim", "lemmas-H", "--count", "1"]).status.code(), Some(2));
}

#[test]
fn generate_is_seeded() {
    let a = rdlab(&["generate", "--family", "F", "--budget", "13", "--seed", "4", "--count", "3"]);
    let b = rdlab(&["generate", "--family", "F", "--budget", "13", "--seed", "4", "--count", "3"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 3);

    let env = Command::new(env!("CARGO_BIN_EXE_rdlab"))
        .args(["generate", "--family", "F", "--budget", "13", "--count", "3"])
        .env("RDLAB_SEED", "4")
        .output()
        .unwrap();
    assert_eq!(stdout(&env), stdout(&a));

    let tree = rdlab(&["generate", "--family", "H", "--budget", "6", "--seed", "1", "--emit", "tree"]);
    assert_eq!(stdout(&tree), "6 5 0 1 0 2 0 3 1 4 1 5\n");
}

#[test]
fn enumerate_lists_every_tree() {
    let out = rdlab(&["enumerate", "-n", "7"]);
    assert_eq!(stdout(&out).lines().count(), 11);
    let out = rdlab(&["enumerate", "-n", "10", "--count-only", "--output", "json"]);
    assert_eq!(stdout(&out).trim(), r#"{"count":106,"n":10}"#);
    let out = rdlab(&["enumerate", "-n", "4", "--format", "edgelist"]);
    assert_eq!(stdout(&out).lines().count(), 2);
}
