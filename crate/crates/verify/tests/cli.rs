use std::process::{Command, Output};

use jacobi_verify::Report;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .env_remove("JACOBI_VERIFY_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn same_seed_gives_identical_json() {
    let args = [
        "--suite",
        "slash",
        "--suite",
        "polynomials",
        "--trials",
        "5",
        "--seed",
        "42",
    ];
    let a = verify(&args);
    let b = verify(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = Report::parse(&stdout(&a)).unwrap();
    assert_eq!(r.suites.len(), 2);
    assert_eq!(r.config.seed, 42);
}

#[test]
fn zero_trials_is_a_field_error() {
    let o = verify(&["--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("trials: must be at least 1"), "{err}");
}

#[test]
fn low_jet_order_names_the_suite() {
    let o = verify(&["--suite", "relations-numeric", "--jet-order", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("jet_order") && err.contains("relations-numeric"),
        "{err}"
    );
}

#[test]
fn csv_has_header_and_one_row_per_suite() {
    let o = verify(&[
        "--suite",
        "polynomials",
        "--suite",
        "relations-exact",
        "--suite",
        "slash",
        "--trials",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn text_report_prints_operators() {
    let o = verify(&["--suite", "relations-exact", "--format", "text"]);
    let text = stdout(&o);
    assert!(text.contains("[4D1+4D2, D3] = 8 y^3 ∂x^2 ∂u^2"), "{text}");
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn failing_suite_sets_exit_status() {
    let o = verify(&["--suite", "helgason", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let r = Report::parse(&stdout(&o)).unwrap();
    assert!(!r.all_passed);
    assert!(r.fitted_constants.iter().any(|f| f.name == "c1"));
}

#[test]
fn config_file_from_environment_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(
        &path,
        r#"{"trials": 3, "seed": 5, "suites": ["polynomials"], "m": 2}"#,
    )
    .unwrap();
    let out = dir.path().join("report.json");
    let o = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(["--seed", "7", "--out", out.to_str().unwrap()])
        .env("JACOBI_VERIFY_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(o.stdout.is_empty());
    let r = Report::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((r.config.trials, r.config.seed, r.config.m), (3, 7, 2));
    assert_eq!(r.suites[0].name, "polynomials");
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"trails": 3}"#).unwrap();
    let o = verify(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
