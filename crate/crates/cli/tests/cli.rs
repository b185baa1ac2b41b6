use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.pcp"))
}

fn pcpcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcpcheck"))
        .args(args)
        .output()
        .expect("pcpcheck runs")
}

fn on_fixture(name: &str, args: &[&str]) -> Output {
    let path = fixture(name);
    let mut all = vec!["--in", path.to_str().expect("utf-8 path")];
    all.extend_from_slice(args);
    pcpcheck(&all)
}

fn on_stdin(text: &str, args: &[&str]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pcpcheck"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("pcpcheck starts");
    child
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(text.as_bytes())
        .expect("stdin accepts the presentation");
    child.wait_with_output().expect("pcpcheck finishes")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn consistent_presentations_exit_zero() {
    let out = on_fixture("s3", &["check"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "CONSISTENT (4 equations checked)\n");
    assert_eq!(code(&on_fixture("empty_group", &["check"])), 0);
}

#[test]
fn failing_equations_are_listed_one_per_line() {
    let out = on_fixture("ex16", &["check"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails, ["FAIL G4(i=1,j=2): lhs g2^2 != rhs g2"]);
}

#[test]
fn group_report_json_schema() {
    let out = on_fixture("ex13", &["check", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["mode"], "full");
    assert_eq!(v["consistent"], false);
    let failures = v["failures"].as_array().expect("failures array");
    assert!(!failures.is_empty());
    for f in failures {
        assert_eq!(f["tag"], "G1");
        for key in ["indices", "lhs", "rhs", "lhs_nf", "rhs_nf"] {
            assert!(f.get(key).is_some(), "missing {key}");
        }
        assert_ne!(f["lhs_nf"], f["rhs_nf"]);
    }
    assert!(failures
        .iter()
        .any(|f| f["indices"] == serde_json::json!([1, 2, 3])));
    for key in ["enumerated", "evaluated", "skipped_by_weight"] {
        assert!(v["counts"][key].is_u64(), "missing count {key}");
    }
}

#[test]
fn nilpotent_mode_skips_equations() {
    let out = on_fixture(
        "heisenberg",
        &["check", "--mode", "nilpotent", "--format", "json"],
    );
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["mode"], "nilpotent");
    assert!(v["counts"]["skipped_by_weight"].as_u64() > Some(0));
}

#[test]
fn algebra_report_json_schema() {
    let out = on_fixture("ex25", &["check", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["consistent"], false);
    let failures = v["failures"].as_array().expect("failures array");
    assert!(!failures.is_empty());
    assert!(failures.iter().all(|f| f["tag"] == "A2"));
}

#[test]
fn collect_prints_the_normal_form() {
    let out = on_fixture("ex15", &["collect", "g2*g1^3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "g2^-1\n");
    let v = json(&on_fixture(
        "ex15",
        &["collect", "g2*g1^3", "--format", "json"],
    ));
    assert_eq!(v["normal_form"], "g2^-1");
    assert_eq!(v["exponents"], serde_json::json!(["0", "-1"]));
}

#[test]
fn oracle_reports_order_and_verdict() {
    let out = on_fixture("s3", &["oracle", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["order"], "6");
    assert!(v["witness"].is_null());
    let out = on_fixture("ex24", &["oracle", "--format", "json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], false);
}

#[test]
fn derive_and_weights() {
    let out = on_fixture("s3", &["derive"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "g1^-1 = g1\ng2^-1 = g2^2\n");
    let out = on_fixture("heisenberg", &["weights"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "w = (1,1,2) d = 2\n");
}

#[test]
fn normalize_algebra_elements() {
    let out = on_fixture("ex24", &["normalize", "a1*a2 + a2*a1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "a3\n");
}

#[test]
fn presentations_are_read_from_stdin() {
    let out = on_stdin(
        "group 2\norder g1 = 2\norder g2 = 3\ng2*g1 = g1*g2^2\n",
        &["check"],
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn input_errors_exit_two() {
    let out = on_stdin("group 2\ng2*g1 = g3*g1\n", &["check"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:"));
    assert_eq!(code(&pcpcheck(&["check", "--in", "/nonexistent/x.pcp"])), 2);
    assert_eq!(code(&on_fixture("s3", &["normalize", "a1"])), 2);
    assert_eq!(code(&on_fixture("ex24", &["collect", "g1"])), 2);
    assert_eq!(code(&on_fixture("ex24", &["derive"])), 2);
    assert_eq!(code(&on_fixture("s3", &["collect", "g7"])), 2);
}

#[test]
fn limits_exit_three() {
    let out = on_fixture("s3", &["collect", "g2*g1*g2*g1", "--budget", "1"]);
    assert_eq!(code(&out), 3);
    let mut big = String::from("group 13\n");
    for i in 1..=13 {
        big.push_str(&format!("order g{i} = 2\n"));
    }
    assert_eq!(code(&on_stdin(&big, &["oracle"])), 3);
}
