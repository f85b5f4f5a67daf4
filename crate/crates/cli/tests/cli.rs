//! End-to-end runs of the binary against the fixture corpus.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tauseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(fixture_name: &str, rest: &[&str]) -> Output {
    let path = fixture(fixture_name);
    let mut args = vec!["--input", path.to_str().unwrap()];
    args.extend_from_slice(rest);
    run(&args)
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn validate_accepts_every_fixture() {
    for f in [
        "a2.json",
        "a3.json",
        "loop2.json",
        "nak3.json",
        "kron.json",
        "a2_rational.json",
        "loop2_rational.json",
    ] {
        let out = run_on(f, &["validate"]);
        assert_eq!(out.status.code(), Some(0), "{f}: {out:?}");
        let v = stdout_json(&out);
        assert_eq!(v["status"], "ok");
    }
}

#[test]
fn malformed_input_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["--input", bad.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stderr.is_empty());

    let missing = dir.path().join("missing.json");
    let out = run(&["--input", missing.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn unknown_flags_and_arguments_exit_4() {
    let out = run(&["--bogus"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run_on("a2.json", &["verify", "--statement", "bogus"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run_on("a2.json", &["sequences", "--flavor", "bogus"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn plain_sequences_on_the_linear_quiver() {
    let out = run_on("a2.json", &["sequences", "--flavor", "plain"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["count"], 3);
    assert_eq!(v["sequences"].as_array().unwrap().len(), 3);
}

#[test]
fn signed_sequences_count_ten() {
    let out = run_on("a2.json", &["sequences", "--flavor", "signed"]);
    let v = stdout_json(&out);
    assert_eq!(v["count"], 10);
}

#[test]
fn slice_universe_refuses_sequence_enumeration() {
    let out = run_on("kron.json", &["sequences", "--flavor", "plain"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_single_statement_passes() {
    let out = run_on("a2.json", &["verify", "--statement", "interp"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["statements"][0]["name"], "interp");
    assert_eq!(v["statements"][0]["status"], "pass");
}

#[test]
fn negated_weights_fail_with_counterexample() {
    let out = run_on("a2.json", &["--negate-theta", "verify", "--statement", "equiv"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["statements"][0]["status"], "fail");
    let ce = &v["statements"][0]["counterexample"];
    assert!(ce.is_object());
    assert_eq!(ce["modules"].as_array().unwrap().len(), 2);
}

#[test]
fn report_is_byte_stable_and_complete() {
    let a = run_on("a2.json", &["report"]);
    let b = run_on("a2.json", &["report"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    let statements = v["statements"].as_array().unwrap();
    assert_eq!(statements.len(), 7);
    let names: Vec<&str> = statements
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["nohom", "interp", "equiv", "linindep", "main", "cor-main", "cor-wide"]
    );
    for s in statements {
        assert_eq!(s["status"], "pass");
        assert!(s["counterexample"].is_null());
    }
    let flavors: Vec<(&str, usize)> = v["sequences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            (
                f["flavor"].as_str().unwrap(),
                f["complete"].as_array().unwrap().len(),
            )
        })
        .collect();
    assert_eq!(flavors, [("plain", 3), ("signed", 10), ("brick", 3)]);
}

#[test]
fn slice_report_skips_uniqueness_suites() {
    let out = run_on("kron.json", &["report"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let status_of = |name: &str| {
        v["statements"]
            .as_array()
            .unwrap()
            .iter()
            .find(|s| s["name"] == name)
            .unwrap()["status"]
            .clone()
    };
    for name in ["nohom", "interp", "equiv", "linindep"] {
        assert_eq!(status_of(name), "pass", "{name}");
    }
    for name in ["main", "cor-main", "cor-wide"] {
        assert_eq!(status_of(name), "skipped", "{name}");
    }
    assert_eq!(v["universe"]["certified"], false);
    assert_eq!(v["universe"]["count"], 18);
}

#[test]
fn indecs_and_tau_rigids_on_the_loop() {
    let out = run_on("loop2.json", &["indecs"]);
    let v = stdout_json(&out);
    assert_eq!(v["universe"]["count"], 2);
    assert_eq!(v["modules"].as_array().unwrap().len(), 2);

    let out = run_on("loop2.json", &["tau-rigids"]);
    let v = stdout_json(&out);
    let rigids = v["modules"].as_array().unwrap();
    assert_eq!(rigids.len(), 1);
    assert_eq!(rigids[0]["g_vector"], serde_json::json!([1]));
    assert_eq!(rigids[0]["module"]["dim_vector"], serde_json::json!([2]));
}

#[test]
fn dim_bound_override_demotes_certification() {
    let out = run_on("loop2.json", &["--dim-bound", "1", "indecs"]);
    let v = stdout_json(&out);
    assert_eq!(v["universe"]["certified"], false);
    assert_eq!(v["universe"]["count"], 1);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let fixture_path = fixture("a2.json");
    let out = run(&[
        "--input",
        fixture_path.to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
        "report",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["algebra"], "a2");
}

#[test]
fn rational_fixture_report_skips_semistability() {
    let out = run_on("loop2_rational.json", &["report"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let status_of = |name: &str| {
        v["statements"]
            .as_array()
            .unwrap()
            .iter()
            .find(|s| s["name"] == name)
            .unwrap()["status"]
            .clone()
    };
    assert_eq!(status_of("nohom"), "pass");
    assert_eq!(status_of("interp"), "pass");
    assert_eq!(status_of("equiv"), "skipped");
    assert_eq!(status_of("linindep"), "pass");
    assert_eq!(status_of("main"), "skipped");
    assert_eq!(v["universe"]["bound"].as_array().unwrap().len(), 0);
}

#[test]
fn help_and_version_exit_0() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
}
