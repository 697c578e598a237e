use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gem"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn gem_reports() {
    let v = report(&["gem", data("empty_pair.json").to_str().unwrap()]);
    assert_eq!(v["gem"].as_f64().unwrap(), 0.0);

    let v = report(&["gem", data("squeezed_pair.json").to_str().unwrap()]);
    let want = 2f64.sinh().powi(2) / 16.0;
    assert!((v["gem"].as_f64().unwrap() - want).abs() < 1e-9);
    assert_eq!(v["purities"].as_array().unwrap().len(), 2);

    let v = report(&["gem", data("triangle_small.json").to_str().unwrap()]);
    assert!((v["gem"].as_f64().unwrap() - 7.5e-7).abs() < 1e-10);

    let v = report(&[
        "gem",
        "--measure",
        "logneg",
        data("squeezed_pair.json").to_str().unwrap(),
    ]);
    assert!((v["logneg"].as_f64().unwrap() - 2.0).abs() < 1e-10);
}

#[test]
fn input_errors_exit_two() {
    let out = run(&["gem", data("malformed.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1, column"), "{err}");

    for args in [
        vec!["gem", "/nonexistent/spec.json"],
        vec!["scan2", "--re-range", "1"],
        vec!["scan2", "--steps", "1"],
        vec!["scan3", "--family", "diagonal"],
        vec!["field", "--modes-list", "3,4"],
        vec!["field", "--n-list", "0"],
        vec!["field", "--n-list", "1", "--mass", "-1"],
        vec!["field", "--n-list", "1", "--asymptotic-p", "3"],
        vec!["field"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = run(&[
        "gem",
        "--measure",
        "logneg",
        data("triangle_small.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan2_shape_and_values() {
    let out = run(&[
        "scan2",
        "--re-range",
        "-1:1",
        "--im-range",
        "0:1",
        "--steps",
        "5",
        "--self-test",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re_w,im_w,gem,log_gem,logneg"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 25);
    for row in &rows {
        let (re, im): (f64, f64) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        if im == 0.0 {
            assert_eq!(row[2], "0.00000000e0");
            assert_eq!(row[3], "-inf");
        }
        if re == 0.0 && im == 1.0 {
            assert_eq!(row[2], "8.22132276e-1");
        }
    }
    assert!(!text.contains('\r'));
}

#[test]
fn scan3_families() {
    let out = run(&[
        "scan3",
        "--family",
        "equal",
        "--re-range",
        "0:0",
        "--im-range",
        "0:0.001",
        "--steps",
        "2",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "a,b,gem_g1,gem_g2,log_gem,ratio");
    assert!(rows[1].ends_with(",nan"));
    let ratio: f64 = rows[2].rsplit(',').next().unwrap().parse().unwrap();
    assert!((ratio - 2.0 / 3.0).abs() < 1e-4);

    let out = run(&[
        "scan3",
        "--family",
        "xy",
        "--topology",
        "g2",
        "--x-range",
        "0:2",
        "--y-range",
        "0:2",
        "--steps",
        "3",
        "--self-test",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 10);
}

#[test]
fn field_run_with_summary() {
    let out = run(&["field", "--modes-list", "3,101", "--self-test"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,gem_exact,gem_asymptotic,rel_error\n1,1.42244450e-3,"));
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("kappa2=1.98943679e-2"));
    assert!(summary.contains("kappa4=2.53302959e-2"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = run(&["scan2", "--steps", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 10);
}
