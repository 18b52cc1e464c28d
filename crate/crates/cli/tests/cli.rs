//! End-to-end tests of the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weightconj"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_gevrey_seq(dir: &Path) {
    std::fs::write(dir.join("g1.seq"), "kind: gevrey\ns: 1\nP: 512\n").unwrap();
}

#[test]
fn eval_logplus_at_e() {
    let out = run(&["eval", "--expr", "logplus", "--t", "2.718281828"]);
    assert!(out.status.success());
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 1.0).abs() < 1e-6, "got {v}");
}

#[test]
fn eval_product_conjugate_of_gevrey_pair() {
    let dir = tempfile::tempdir().unwrap();
    write_gevrey_seq(dir.path());
    let out = run(&[
        "eval",
        "--expr",
        "lconj(assoc(g1.seq),assoc(g1.seq))",
        "--seq",
        dir.path().to_str().unwrap(),
        "--t",
        "4",
    ]);
    assert!(out.status.success());
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 1.386294).abs() < 1e-5, "got {v}");
}

#[test]
fn eval_divergent_upper_conjugate_prints_inf_with_note() {
    let out = run(&["eval", "--expr", "uconj(mono(0.5),mono(1))", "--t", "1"]);
    assert!(out.status.success(), "divergence is not an error");
    assert_eq!(stdout(&out).trim(), "inf");
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("diverges"),
        "stderr carries a note"
    );
}

#[test]
fn eval_parse_error_exits_2() {
    let out = run(&["eval", "--expr", "bogus(", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_of_gevrey_weight() {
    let dir = tempfile::tempdir().unwrap();
    write_gevrey_seq(dir.path());
    let out = run(&[
        "table",
        "--expr",
        "assoc(g1.seq)",
        "--seq",
        dir.path().to_str().unwrap(),
        "--t-min",
        "0",
        "--t-max",
        "5",
        "--count",
        "11",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,value");
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[1], "0,0");
    assert_eq!(lines[2], "0.5,0"); // below the first quotient the sup is 0
    let v3: f64 = lines[7].split(',').nth(1).unwrap().parse().unwrap();
    assert!((v3 - 4.5f64.ln()).abs() < 1e-9, "value at t=3: {v3}");
}

#[test]
fn table_is_deterministic_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "table",
            "--expr",
            "mono(2)",
            "--t-min",
            "0",
            "--t-max",
            "10",
            "--count",
            "21",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn table_rejects_bad_range() {
    let out = run(&["table", "--expr", "mono(1)", "--t-min", "5", "--t-max", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn indices_of_monomial_and_logplus() {
    let out = run(&["indices", "--expr", "mono(2)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("gamma_lower: [2, 2]"), "{text}");
    assert!(text.contains("analytic: (2, 2)"), "{text}");

    let out = run(&["indices", "--expr", "logplus"]);
    let text = stdout(&out);
    assert!(text.contains("gamma_lower: [inf, inf]"), "{text}");
    assert!(text.contains("gamma_upper: [inf, inf]"), "{text}");
}

#[test]
fn indices_of_conjugate_add() {
    let out = run(&["indices", "--expr", "lconj(mono(1),mono(1))"]);
    let text = stdout(&out);
    assert!(text.contains("analytic: (2, 2)"), "{text}");
}

#[test]
fn verify_filtered_run_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.csv");
    let out = run(&[
        "verify",
        "--filter",
        "fixedpoint",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("check_id,status,max_abs_err,grid_size,runtime_ms\n"));
    assert_eq!(
        text.lines().count(),
        3,
        "header plus two fixed-point checks"
    );
    assert!(text.lines().skip(1).all(|l| l.contains(",pass,")), "{text}");
}

#[test]
fn verify_report_unwritable_path_exits_3() {
    let out = run(&[
        "verify",
        "--filter",
        "fixedpoint",
        "--out",
        "/nonexistent-dir/report.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_subordinate_pair() {
    let dir = tempfile::tempdir().unwrap();
    write_gevrey_seq(dir.path());
    std::fs::write(dir.path().join("g2.seq"), "kind: gevrey\ns: 2\nP: 512\n").unwrap();
    let out = run(&[
        "compare",
        "--expr",
        "assoc(g2.seq)",
        "--seq",
        dir.path().to_str().unwrap(),
        "--expr2",
        "assoc(g1.seq)",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("relation:"), "{text}");
    assert!(text.contains("well defined"), "{text}");
}
