//! End-to-end tests driving the compiled binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_projsplx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .expect("piped stdin")
            .write_all(text.as_bytes())
            .expect("stdin accepts input");
    }
    child.wait_with_output().expect("binary exits")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn parse_row(line: &str) -> Vec<f64> {
    line.split(',')
        .map(|t| t.parse().expect("real token"))
        .collect()
}

#[test]
fn project_known_vectors() {
    let out = run(&["project"], Some("0,2\n-10 0 0 0\n"));
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(parse_row(lines[0]), vec![0.0, 1.0]);
    let row = parse_row(lines[1]);
    assert_eq!(row[0], 0.0);
    for &v in &row[1..] {
        assert!((v - 1.0 / 3.0).abs() <= 1e-15);
    }
}

#[test]
fn project_skips_empty_lines_with_warning() {
    let out = run(&["project"], Some("\n0.5 0.5\n"));
    assert!(out.status.success());
    assert!(stderr_of(&out).contains("skipping empty line 1"));
    assert_eq!(stdout_of(&out).trim().lines().count(), 1);
}

#[test]
fn project_rejects_malformed_token() {
    let out = run(&["project"], Some("0,abc\n"));
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("line 1"), "diagnostic names the line: {err}");
    assert!(err.contains("abc"), "diagnostic names the token: {err}");
    assert!(stdout_of(&out).is_empty());
}

#[test]
fn project_rejects_non_finite_token() {
    let out = run(&["project"], Some("1 inf\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("non-finite"));
}

#[test]
fn project_rejects_bad_radius() {
    let out = run(&["project", "--radius", "-1"], Some("0,2\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("radius"));
}

#[test]
fn project_output_is_idempotent_as_text() {
    let first = run(&["project"], Some("0.3,0.3,0.8\n"));
    assert!(first.status.success());
    let text = stdout_of(&first);
    let second = run(&["project"], Some(&text));
    assert!(second.status.success());
    let reprojected = stdout_of(&second);
    for (x, y) in parse_row(reprojected.trim())
        .iter()
        .zip(parse_row(text.trim()).iter())
    {
        assert!((x - y).abs() <= 1e-15, "{x} vs {y}");
    }
}

#[test]
fn project_algorithms_agree() {
    let input = "0.3,0.3,0.8\n-1 2 0.5 0.25\n";
    let exact = stdout_of(&run(&["project"], Some(input)));
    for algorithm in ["michelot", "bisection", "dykstra"] {
        let out = run(&["project", "--algorithm", algorithm], Some(input));
        assert!(out.status.success());
        for (a, b) in stdout_of(&out).trim().lines().zip(exact.trim().lines()) {
            for (x, y) in parse_row(a).iter().zip(parse_row(b).iter()) {
                assert!((x - y).abs() <= 1e-7, "{algorithm}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn project_radius_scales_the_target() {
    // (0, 2) already lies on the radius-2 simplex
    let out = run(&["project", "--radius", "2"], Some("0,2\n"));
    assert!(out.status.success());
    assert_eq!(parse_row(stdout_of(&out).trim()), vec![0.0, 2.0]);
}

#[test]
fn project_parallel_preserves_order() {
    let input: String = (1..=32).map(|k| format!("{k} 0 0\n")).collect();
    let serial = stdout_of(&run(&["project"], Some(&input)));
    let parallel = stdout_of(&run(&["project", "--parallel"], Some(&input)));
    assert_eq!(serial, parallel);
}

#[test]
fn project_reads_and_writes_files() {
    let dir = tempfile::tempdir().expect("tempdir");
    let input_path = dir.path().join("input.txt");
    let output_path = dir.path().join("output.txt");
    std::fs::write(&input_path, "0,2\n").expect("write input");
    let out = run(
        &[
            "project",
            "--input",
            input_path.to_str().unwrap(),
            "--output",
            output_path.to_str().unwrap(),
        ],
        None,
    );
    assert!(out.status.success());
    let written = std::fs::read_to_string(&output_path).expect("read output");
    assert_eq!(parse_row(written.trim()), vec![0.0, 1.0]);
}

#[test]
fn project_missing_input_file_is_a_usage_error() {
    let out = run(&["project", "--input", "/nonexistent/input.txt"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("/nonexistent/input.txt"));
}

#[test]
fn scatter_emits_1024_rows() {
    let out = run(&["scatter", "--n", "3"], None);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.trim().lines();
    assert_eq!(lines.next(), Some("y1,y2,y3,x1,x2,x3"));
    assert_eq!(lines.count(), 1024);
}

#[test]
fn scatter_rejects_unsupported_dimension() {
    let out = run(&["scatter", "--n", "4"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scatter_is_deterministic_for_a_fixed_seed() {
    let a = run(&["scatter", "--n", "2", "--seed", "7"], None);
    let b = run(&["scatter", "--n", "2", "--seed", "7"], None);
    assert_eq!(stdout_of(&a), stdout_of(&b));
}

#[test]
fn bench_emits_one_row_per_dimension() {
    let out = run(
        &["bench", "--n-min", "2", "--n-max", "4", "--points", "64"],
        None,
    );
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.trim().lines();
    assert_eq!(
        lines.next(),
        Some("n,point_count,seed,wall_time_seconds,projections_per_second")
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn bench_parallel_adds_a_threads_column() {
    let out = run(
        &[
            "bench",
            "--n-min",
            "2",
            "--n-max",
            "2",
            "--points",
            "64",
            "--parallel",
        ],
        None,
    );
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.starts_with("n,point_count,seed,wall_time_seconds,projections_per_second,threads"));
}

#[test]
fn bench_rejects_inverted_range() {
    let out = run(&["bench", "--n-min", "10", "--n-max", "5"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_passes_and_is_deterministic() {
    let a = run(&["check", "--seed", "3"], None);
    assert!(a.status.success());
    let text = stdout_of(&a);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
    let b = run(&["check", "--seed", "3"], None);
    assert_eq!(stdout_of(&b), text);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["project", "--bogus"], None);
    assert_eq!(out.status.code(), Some(2));
}
