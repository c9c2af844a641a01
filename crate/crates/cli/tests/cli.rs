use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::{Command, Output};

use revival_core::trigpolylog::eval_trig_polylog;
use revival_core::PolylogIndex;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revival"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse::<f64>().unwrap()).collect())
        .collect()
}

fn temp_csv(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("revival-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn sup_line(out: &Output) -> f64 {
    let text = stdout(out);
    let line = text
        .lines()
        .find(|l| l.starts_with("sup_abs_err="))
        .expect("summary line");
    line["sup_abs_err=".len()..].parse().unwrap()
}

#[test]
fn polylog_sign_pattern() {
    let out = run(&["polylog", "--k", "2", "--j", "1", "--r", "1", "--grid", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("x,S,C"));
    let r = rows(&text);
    assert_eq!(r.len(), 5);
    assert!((r[1][1] + PI / 4.0).abs() < 1e-15);
    assert!((r[3][1] - PI / 4.0).abs() < 1e-15);
    assert!(r[2][1].is_nan() && r[0][1].is_nan());
}

#[test]
fn polylog_two_points_are_endpoints() {
    let out = run(&["polylog", "--k", "3", "--j", "1", "--r", "2", "--grid", "2"]);
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 2);
    assert_eq!(r[0][0], -PI);
    assert_eq!(r[1][0], PI);
}

#[test]
fn polylog_replays_library_bit_exactly() {
    let out = run(&[
        "polylog", "--k", "3", "--j", "2", "--r", "1", "--grid", "401",
    ]);
    let idx = PolylogIndex::new(2, 3, 1).unwrap();
    for row in rows(&stdout(&out)) {
        match eval_trig_polylog(idx, row[0]) {
            Ok((s, c)) => assert!(s == row[1] && c == row[2], "x={}", row[0]),
            Err(_) => assert!(row[1].is_nan() && row[2].is_nan()),
        }
    }
}

#[test]
fn bo_at_time_zero_is_the_step() {
    let out = run(&[
        "profile",
        "--equation",
        "bo",
        "--p",
        "0",
        "--q",
        "1",
        "--method",
        "closed",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("x,u"));
    for row in rows(&text) {
        if row[1].is_finite() {
            let expected = if row[0] > 0.0 { 1.0 } else { 0.0 };
            assert!((row[1] - expected).abs() < 1e-12, "{row:?}");
        }
    }
}

#[test]
fn kdv_rows_are_piecewise_constant() {
    let out = run(&[
        "profile",
        "--equation",
        "kdv",
        "--p",
        "1",
        "--q",
        "3",
        "--grid",
        "601",
    ]);
    let r = rows(&stdout(&out));
    let width = PI / 3.0;
    let cell = |x: f64| ((x + PI) / width).floor() as i64;
    for pair in r.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a[1].is_finite() && b[1].is_finite() && cell(a[0] + 1e-9) == cell(b[0] - 1e-9) {
            assert!((a[1] - b[1]).abs() < 1e-10, "{a:?} {b:?}");
        }
    }
}

#[test]
fn bo_series_matches_closed_at_point() {
    let args = |method: &'static str| {
        run(&[
            "profile",
            "--equation",
            "bo",
            "--p",
            "1",
            "--q",
            "2",
            "--method",
            method,
            "--nmodes",
            "100000",
            "--x-lo",
            "0.3",
            "--x-hi",
            "0.4",
            "--grid",
            "2",
        ])
    };
    let closed = rows(&stdout(&args("closed")));
    let series = rows(&stdout(&args("series")));
    assert!((closed[0][1] - series[0][1]).abs() <= 1e-3);
}

#[test]
fn compare_bo() {
    let path = temp_csv("bo.csv");
    let out = run(&[
        "compare",
        "--equation",
        "bo",
        "--p",
        "1",
        "--q",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(sup_line(&out) <= 1e-3);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("x,u_closed,u_series,abs_err"));
    assert_eq!(text.lines().count(), 1002);
}

#[test]
fn compare_smith() {
    let path = temp_csv("smith.csv");
    let out = run(&[
        "compare",
        "--equation",
        "smith",
        "--delta",
        "10",
        "--p",
        "1",
        "--q",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(sup_line(&out) <= 1.05e-4 + 2e-3);
}

#[test]
fn compare_ilw_against_shifted_bo() {
    let path = temp_csv("ilw.csv");
    let out = run(&[
        "compare",
        "--equation",
        "ilw",
        "--delta",
        "100",
        "--p",
        "1",
        "--q",
        "7",
        "--shift-bo",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(sup_line(&out) <= 1e-10);
}

#[test]
fn identical_runs_are_byte_identical() {
    let a = run(&[
        "profile",
        "--equation",
        "smith",
        "--delta",
        "3",
        "--p",
        "2",
        "--q",
        "7",
        "--method",
        "series",
        "--nmodes",
        "2000",
    ]);
    let b = run(&[
        "profile",
        "--equation",
        "smith",
        "--delta",
        "3",
        "--p",
        "2",
        "--q",
        "7",
        "--method",
        "series",
        "--nmodes",
        "2000",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kernel_table() {
    let out = run(&["kernel", "--kind", "ilw", "--delta", "1", "--grid", "3"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("x,re,im"));
    let r = rows(&text);
    assert!(r[1][1].is_nan());
    // C(π) − C(−π) = −1/δ
    assert!((r[2][1] - r[0][1] + 1.0).abs() < 1e-10);
}

#[test]
fn argument_errors_exit_2() {
    for args in [
        vec!["polylog", "--k", "2", "--j", "3"],
        vec!["polylog", "--k", "2", "--j", "1", "--grid", "1"],
        vec!["profile", "--equation", "ilw"],
        vec!["profile", "--equation", "bo", "--delta", "2"],
        vec!["profile", "--equation", "bo", "--q", "0"],
        vec!["profile", "--equation", "heat"],
        vec!["compare", "--equation", "bo", "--shift-bo"],
        vec!["kernel", "--kind", "smith"],
        vec!["verify", "--only", "12"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_subset_and_perturbed_tolerance() {
    let ok = run(&["verify", "--only", "3,10"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() == 2);

    let bad = run(&["verify", "--only", "10", "--tolerance-scale", "1e-9"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("[FAIL] 10"));
}
