//! End-to-end tests against the compiled `ballcheck` binary: exit codes,
//! report shape, and file round trips.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ballcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ballcheck"))
        .args(args)
        .env_remove("BALLCHECK_BUDGET_SECS")
        .env_remove("BALLCHECK_FACET_CAP")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_example_is_unknown_with_exit_zero() {
    let out = ballcheck(&["analyze", "corpus:example-3-2"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let json = stdout_json(&out);
    assert_eq!(json["verdict"], "Unknown");
    assert_eq!(json["reduced"], true);
    assert_eq!(json["spanning"].as_array().unwrap().len(), 10);
}

#[test]
fn analyze_invalid_ball_exits_two() {
    // two tetrahedra sharing only an edge: fails 3-ball validation
    let out = ballcheck(&["analyze", "corpus:pinched-tetrahedra"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let json = stdout_json(&out);
    assert_eq!(json["verdict"], "InvalidInput");
    assert!(!json["validation"]["failures"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn analyze_rejects_missing_file() {
    let out = ballcheck(&["analyze", "/nonexistent/ball.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn analyze_rejects_malformed_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "1 2 three 4\n").unwrap();
    let out = ballcheck(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn analyze_reads_text_and_json_files() {
    let dir = tempfile::tempdir().unwrap();

    let text = ballcheck(&["corpus", "export", "simplex", "--format", "text"]);
    let tpath = dir.path().join("simplex.txt");
    fs::write(&tpath, &text.stdout).unwrap();
    let out = ballcheck(&["analyze", tpath.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    let json = ballcheck(&["corpus", "export", "simplex", "--format", "json"]);
    let jpath = dir.path().join("simplex.json");
    fs::write(&jpath, &json.stdout).unwrap();
    let out = ballcheck(&["analyze", jpath.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert_eq!(stdout_json(&out)["name"], "simplex");
}

#[test]
fn oracle_finds_example_shelling() {
    let out = ballcheck(&["oracle", "corpus:example-3-2", "--method", "shellable"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let json = stdout_json(&out);
    assert_eq!(json["outcome"], "found");
    assert_eq!(json["verified"], true);
    assert_eq!(json["shelling"]["order"].as_array().unwrap().len(), 36);
}

#[test]
fn oracle_proves_absence_on_a_nonpure_complex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nonpure.txt");
    fs::write(&path, "1 2 3 4\n5 6 7\n").unwrap();
    let out = ballcheck(&["oracle", path.to_str().unwrap(), "--method", "shellable"]);
    assert_eq!(out.status.code(), Some(11), "{out:?}");
    assert_eq!(stdout_json(&out)["outcome"], "absent");
}

#[test]
fn oracle_budget_exit_on_large_literal_search() {
    // 36 facets exceed the default facet cap; shrink the budget so the
    // shellability fast path cannot mask the cap either
    let out = ballcheck(&[
        "oracle",
        "corpus:example-3-2",
        "--method",
        "constructible",
        "--mode",
        "literal",
        "--budget-secs",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(12), "{out:?}");
    let json = stdout_json(&out);
    assert!(json["outcome"] == "budget-exceeded" || json["outcome"] == "timeout");
}

#[test]
fn oracle_constructible_on_small_ball() {
    let out = ballcheck(&[
        "oracle",
        "random:3ball:8",
        "--seed",
        "5",
        "--method",
        "constructible",
        "--mode",
        "literal",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let json = stdout_json(&out);
    assert_eq!(json["outcome"], "found");
    assert_eq!(json["verified"], true);
    assert!(json["construction"].is_object());
}

#[test]
fn validate_pass_and_fail_codes() {
    let ok = ballcheck(&["validate", "corpus:example-3-2", "--claim", "ball3"]);
    assert_eq!(ok.status.code(), Some(0), "{ok:?}");
    assert_eq!(stdout_json(&ok)["passed"], true);

    let bad = ballcheck(&["validate", "corpus:example-3-2", "--claim", "ball2"]);
    assert_eq!(bad.status.code(), Some(1), "{bad:?}");
    assert_eq!(stdout_json(&bad)["passed"], false);
}

#[test]
fn corpus_list_and_unknown_name() {
    let out = ballcheck(&["corpus", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let names = String::from_utf8_lossy(&out.stdout);
    assert!(names.lines().any(|l| l == "example-3-2"), "{names}");
    assert!(names.lines().any(|l| l == "simplex"), "{names}");

    let bad = ballcheck(&["corpus", "export", "no-such-instance"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn random_inputs_are_seed_deterministic() {
    let a = ballcheck(&["analyze", "random:3ball:10", "--seed", "42"]);
    let b = ballcheck(&["analyze", "random:3ball:10", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = ballcheck(&["analyze", "random:3ball:10", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn env_budget_is_honored_when_flag_absent() {
    let out = Command::new(env!("CARGO_BIN_EXE_ballcheck"))
        .args([
            "oracle",
            "corpus:example-3-2",
            "--method",
            "constructible",
            "--mode",
            "literal",
        ])
        .env("BALLCHECK_BUDGET_SECS", "0")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(12), "{out:?}");
}

#[test]
fn text_output_mode_is_human_readable() {
    let out = ballcheck(&["analyze", "corpus:example-3-2", "--output", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("verdict"), "{text}");
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_err());
}
