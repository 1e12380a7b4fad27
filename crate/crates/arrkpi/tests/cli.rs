//! End-to-end tests of the command-line interface: exit codes, output
//! shapes, artifact export, and byte-for-byte reproducibility.

use std::io::Write as _;
use std::process::{Command, Output};

use serde_json::Value;

fn arrkpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrkpi"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process was not killed by a signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout must be JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

/// Writes `contents` to a fresh temporary file and returns its path.
fn temp_fixture(name: &str, contents: &str) -> tempfile::TempPath {
    let mut file = tempfile::Builder::new()
        .prefix(name)
        .suffix(".json")
        .tempfile()
        .expect("temporary file");
    file.write_all(contents.as_bytes()).expect("fixture write");
    file.into_temp_path()
}

#[test]
fn fans_lists_the_rank_two_reflection_arrangement() {
    let out = arrkpi(&["fans", "--family", "B:n=2"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let j = stdout_json(&out);
    assert_eq!(j["fan_count"], 17, "B2 region decomposes into 17 fans");
    assert_eq!(j["chamber_count"], 8, "B2 has 8 chambers");
    assert_eq!(j["bounded_fans_complete"], true);
    assert_eq!(j["fans"].as_array().expect("fan list").len(), 17);
}

#[test]
fn fans_accepts_an_arrangement_file_and_an_empty_arrangement() {
    let path = temp_fixture(
        "empty-arrangement",
        r#"{"dim": 2, "hyperplanes": [], "region": [[-4, 4], [-4, 4]]}"#,
    );
    let out = arrkpi(&["fans", "--file", path.to_str().expect("utf-8 path")]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let j = stdout_json(&out);
    assert_eq!(j["fan_count"], 1, "no hyperplanes leave a single chamber");
    assert_eq!(j["chamber_count"], 1);
}

#[test]
fn verify_admissible_accepts_positional_family_arguments() {
    let out = arrkpi(&["verify", "admissible", "K", "1", "2"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let j = stdout_json(&out);
    assert_eq!(j["suite"], "admissible");
    assert_eq!(j["parameters"]["vertex_count"], "17");
}

#[test]
fn verify_coxeter_passes_at_rank_four() {
    let out = arrkpi(&["verify", "coxeter", "--n", "4"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let j = stdout_json(&out);
    let reports = j["reports"].as_array().expect("report list");
    assert!(
        reports.iter().all(|r| r["violation_count"] == 0),
        "all checks clean"
    );
    assert!(
        reports.iter().any(|r| r["name"] == "fork_sphere_subdivision_iso"),
        "rank 4 includes the subdivision isomorphism check"
    );
    assert!(
        j["parameters"]["hexagon_flag_witness"]
            .as_str()
            .is_some_and(|w| w.split_whitespace().count() == 3),
        "the rank-2 contrast records its three-vertex witness"
    );
}

#[test]
fn verify_poset_flags_a_bowtie_and_exits_one() {
    let path = temp_fixture(
        "bowtie",
        r#"{"elements": ["x1", "x2", "y1", "y2"],
            "leq": [[0, 2], [0, 3], [1, 2], [1, 3]]}"#,
    );
    let out = arrkpi(&["verify", "poset", "--poset", path.to_str().expect("utf-8 path")]);
    assert_eq!(exit_code(&out), 1, "a violated property exits 1");
    let j = stdout_json(&out);
    let bowtie = j["reports"]
        .as_array()
        .expect("report list")
        .iter()
        .find(|r| r["name"] == "bowtie_free")
        .expect("bowtie check present")
        .clone();
    assert_eq!(bowtie["violation_count"], 1);
    let witness = bowtie["counterexamples"][0].to_string();
    for label in ["x1", "x2", "y1", "y2"] {
        assert!(witness.contains(label), "witness names {label}: {witness}");
    }
}

#[test]
fn verify_salvetti_and_orthoscheme_default_suites_pass() {
    let out = arrkpi(&["verify", "salvetti"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let out = arrkpi(&["verify", "orthoscheme", "--n", "2"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_artin_reports_are_byte_identical_across_thread_counts() {
    let a = arrkpi(&["verify", "artin", "--n", "2", "--L", "3", "--jobs", "1"]);
    let b = arrkpi(&["verify", "artin", "--n", "2", "--L", "3", "--jobs", "4"]);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(exit_code(&b), 0);
    assert_eq!(a.stdout, b.stdout, "reports must not depend on parallelism");
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let path = dir.path().join("report.json");
    let out = arrkpi(&[
        "verify",
        "artin",
        "--n",
        "2",
        "--L",
        "2",
        "--out",
        path.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(exit_code(&out), 0);
    let written = std::fs::read_to_string(&path).expect("report file exists");
    let j: Value = serde_json::from_str(&written).expect("file holds JSON");
    assert_eq!(j["suite"], "artin");
    assert!(
        String::from_utf8_lossy(&out.stdout).contains("pass"),
        "summary goes to stdout when the report goes to a file"
    );
}

#[test]
fn export_hasse_emits_dot_with_all_rank_two_vertices() {
    let out = arrkpi(&["export", "hasse", "--n", "2"]);
    assert_eq!(exit_code(&out), 0);
    let dot = String::from_utf8(out.stdout).expect("DOT is UTF-8");
    assert!(dot.starts_with("digraph"), "DOT output starts with digraph");
    let nodes = dot.lines().filter(|l| l.contains("label=")).count();
    assert_eq!(nodes, 8, "rank-2 cube complex has 8 vertices");
}

#[test]
fn export_salvetti_one_skeleton_has_doubled_edges() {
    let out = arrkpi(&["export", "salvetti", "--family", "B:n=2"]);
    assert_eq!(exit_code(&out), 0);
    let dot = String::from_utf8(out.stdout).expect("DOT is UTF-8");
    let arcs = dot.matches(" -> ").count();
    assert_eq!(arcs, 16, "8 chambers of B2 are joined by 16 directed arcs");
}

#[test]
fn export_ball_supports_dot_and_json() {
    let dot = arrkpi(&["export", "ball", "--n", "2", "--L", "2"]);
    assert_eq!(exit_code(&dot), 0);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("graph"));
    let json = arrkpi(&["export", "ball", "--n", "2", "--L", "2", "--format", "json"]);
    assert_eq!(exit_code(&json), 0);
    let j = stdout_json(&json);
    assert_eq!(j["elements"], 109, "rank-2 radius-2 ball has 109 elements");
}

#[test]
fn out_of_range_parameters_exit_two() {
    for args in [
        ["verify", "coxeter", "--n", "9"].as_slice(),
        ["verify", "artin", "--n", "4"].as_slice(),
        ["verify", "artin", "--n", "2", "--L", "99"].as_slice(),
        ["fans", "--family", "Z:n=2"].as_slice(),
        ["verify", "admissible", "--family", "H:k=0,n=2"].as_slice(),
        ["verify", "poset"].as_slice(),
    ] {
        let out = arrkpi(args);
        assert_eq!(
            exit_code(&out),
            2,
            "args {args:?} must be rejected; stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn missing_input_file_exits_two_with_a_readable_error() {
    let out = arrkpi(&["fans", "--file", "/nonexistent/arrangement.json"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("/nonexistent/arrangement.json"),
        "error names the missing path: {stderr}"
    );
}
