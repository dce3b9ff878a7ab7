//! End-to-end tests of the binary: exit codes, format round-trips,
//! reproducible generation, and certificate tamper detection through the
//! JSON surface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn mfas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mfas-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_scratch(name: &str, content: &str) -> PathBuf {
    let path = scratch(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn cycle_file(n: usize, name: &str) -> PathBuf {
    let g = mfas_core::gen::gen_cycle(n);
    let mut text = format!("n {} m_edges {}\n", n, g.edge_count());
    for (u, v) in g.edges() {
        text.push_str(&format!("{u} {v}\n"));
    }
    write_scratch(name, &text)
}

#[test]
fn solve_cycle6_succeeds() {
    let input = cycle_file(6, "c6-solve.txt");
    let out = mfas(&["solve", "--input", input.to_str().unwrap(), "--m", "4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["fas_size"], 1);
    assert_eq!(report["bound_value"], 4);
    assert_eq!(report["certificate_ok"], true);
    assert_eq!(report["gamma"], 9);
}

#[test]
fn solve_triangle_exits_2_with_witness() {
    let input = write_scratch("triangle.txt", "n 3 m_edges 3\n0 1\n1 2\n2 0\n");
    let out = mfas(&["solve", "--input", input.to_str().unwrap(), "--m", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("length 3"), "stderr: {err}");
    assert!(err.contains("->"), "witness cycle not printed: {err}");
}

#[test]
fn solve_malformed_header_exits_3() {
    let input = write_scratch("bad-header.txt", "vertices 3\n0 1\n");
    let out = mfas(&["solve", "--input", input.to_str().unwrap(), "--m", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solve_missing_file_exits_3() {
    let out = mfas(&["solve", "--input", "/nonexistent/g.txt", "--m", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solve_m3_exits_4() {
    let input = cycle_file(6, "c6-m3.txt");
    let out = mfas(&["solve", "--input", input.to_str().unwrap(), "--m", "3"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_untampered_report_exits_0() {
    let input = cycle_file(6, "c6-verify.txt");
    let report = scratch("c6-verify-report.json");
    let out = mfas(&[
        "solve",
        "--input",
        input.to_str().unwrap(),
        "--m",
        "4",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = mfas(&[
        "verify",
        "--input",
        input.to_str().unwrap(),
        "--m",
        "4",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("certificate ok"));
}

#[test]
fn verify_tampered_fas_edge_reports_violation() {
    let input = cycle_file(6, "c6-tamper.txt");
    let report_path = scratch("c6-tamper-report.json");
    mfas(&[
        "solve",
        "--input",
        input.to_str().unwrap(),
        "--m",
        "4",
        "--output",
        report_path.to_str().unwrap(),
    ]);
    let mut report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    // Swap the recorded cut to a different edge.
    report["trace"][0]["x3"] = serde_json::json!([[3, 4]]);
    std::fs::write(&report_path, serde_json::to_string(&report).unwrap()).unwrap();
    let out = mfas(&[
        "verify",
        "--input",
        input.to_str().unwrap(),
        "--m",
        "4",
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stdout(&out).contains("X₃ ≠ E(V₁,V₂)"),
        "stdout: {}",
        stdout(&out)
    );
}

#[test]
fn verify_without_trace_is_usage_error() {
    let input = cycle_file(6, "c6-notrace.txt");
    let report = write_scratch("no-trace.json", "{\"gamma\": 9}");
    let out = mfas(&[
        "verify",
        "--input",
        input.to_str().unwrap(),
        "--m",
        "4",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn exact_cycle6_and_guard() {
    let input = cycle_file(6, "c6-exact.txt");
    let out = mfas(&["exact", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["exact_beta"], 1);

    let two_triangles = write_scratch(
        "two-triangles.txt",
        "n 6 m_edges 6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n",
    );
    let out = mfas(&["exact", "--input", two_triangles.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["exact_beta"], 2);

    let big = cycle_file(30, "c30.txt");
    let out = mfas(&["exact", "--input", big.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn stats_rows_and_usage_errors() {
    let input = cycle_file(6, "c6-stats.txt");
    let out = mfas(&["stats", "--input", input.to_str().unwrap(), "--m", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("v=")).collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert!(row.contains("out_ratio=1/2"), "row: {row}");
        assert!(row.contains("in_ratio=1/2"), "row: {row}");
    }
    assert!(text.contains("min exact ratio = 1/2 at v=0 k=1 side=out"));

    let out = mfas(&[
        "stats",
        "--input",
        input.to_str().unwrap(),
        "--m",
        "4",
        "--vertex",
        "17",
    ]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn stats_restricted_to_one_vertex() {
    let input = cycle_file(6, "c6-stats-v.txt");
    let out = mfas(&[
        "stats",
        "--input",
        input.to_str().unwrap(),
        "--m",
        "4",
        "--vertex",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("v=")).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("v=3 "));
}

#[test]
fn stats_beyond_enumeration_guard_uses_surrogates() {
    let input = cycle_file(20, "c20-stats.txt");
    let out = mfas(&["stats", "--input", input.to_str().unwrap(), "--m", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("exact s/t columns skipped"));
    assert!(text.contains("min surrogate ratio = 1/2 at v=0 k=1 side=out"));
    assert!(!text.contains("out_ratio="));
}

#[test]
fn solve_timings_flag_records_wall_time() {
    let input = cycle_file(6, "c6-timings.txt");
    let out = mfas(&[
        "solve",
        "--input",
        input.to_str().unwrap(),
        "--m",
        "4",
        "--timings",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["wall_time_ms"].is_u64());
}

#[test]
fn gen_blowup_via_cli() {
    let out = mfas(&[
        "gen", "--model", "blowup", "--base-len", "5", "--sizes", "2,2,2,2,2", "--m", "4",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("n 10 m_edges 20"));

    let out = mfas(&["gen", "--model", "blowup", "--base-len", "5", "--m", "4"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn stats_on_edgeless_graph_trims_everything() {
    let input = write_scratch("edgeless.txt", "n 4 m_edges 0\n");
    let out = mfas(&["stats", "--input", input.to_str().unwrap(), "--m", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("trim removed 4 vertices"));
    assert!(text.contains("nothing remains"));
    assert!(!text.contains("v="));
}

#[test]
fn gen_writes_expected_cycle_file() {
    let out = mfas(&["gen", "--model", "cycle", "--n", "6", "--m", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("n 6 m_edges 6"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 7);
}

#[test]
fn gen_is_deterministic_per_seed() {
    let args = [
        "gen", "--model", "er", "--n", "12", "--m", "4", "--p", "3/10", "--seed", "1",
    ];
    let a = mfas(&args);
    let b = mfas(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = mfas(&[
        "gen", "--model", "er", "--n", "12", "--m", "4", "--p", "3/10", "--seed", "2",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gen_output_round_trips_through_solve() {
    let path = scratch("gen-er.txt");
    let out = mfas(&[
        "gen", "--model", "er", "--n", "14", "--m", "5", "--p", "0.3", "--seed", "9",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = mfas(&["solve", "--input", path.to_str().unwrap(), "--m", "5"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["generator"]["model"], "er");
    assert_eq!(report["generator"]["seed"], 9);
    assert_eq!(report["certificate_ok"], true);
}

#[test]
fn gen_rejects_incompatible_m() {
    let out = mfas(&["gen", "--model", "cycle", "--n", "4", "--m", "5"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn gen_then_solve_round_trips_across_models() {
    let cases: [&[&str]; 3] = [
        &["--model", "cycle", "--n", "9", "--m", "5"],
        &["--model", "circulant", "--n", "13", "--steps", "1,2", "--m", "6"],
        &["--model", "blowup", "--base-len", "6", "--sizes", "1,2,3,1,2,3", "--m", "5"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let path = scratch(&format!("roundtrip-{i}.txt"));
        let mut args = vec!["gen"];
        args.extend_from_slice(case);
        args.extend_from_slice(&["--output", path.to_str().unwrap()]);
        let out = mfas(&args);
        assert!(out.status.success(), "{}", stderr(&out));
        let m_flag = case[case.len() - 1];
        let out = mfas(&["solve", "--input", path.to_str().unwrap(), "--m", m_flag]);
        assert!(out.status.success(), "{}", stderr(&out));
        let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["certificate_ok"], true);
        assert_eq!(report["generator"]["model"], case[1]);
    }
}

#[test]
fn bench_small_filter_runs() {
    let out = mfas(&["bench", "--m", "4", "--models", "cycle", "--jobs", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("certificates: all ok"));
    // Every ratio column entry is a fraction <= 1: numerator <= denominator.
    for line in text.lines().filter(|l| l.starts_with("cycle")) {
        let ratio = line.split_whitespace().nth(6).unwrap();
        let (a, b) = ratio.split_once('/').unwrap();
        let (a, b): (u64, u64) = (a.parse().unwrap(), b.parse().unwrap());
        assert!(a <= b, "ratio {ratio} exceeds 1");
    }
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = mfas(&["solve", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
}
