use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn cotensor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotensor"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn nf(preset: &str, algebra: &str, expr: &str) -> String {
    let o = cotensor(&["nf", "--preset", preset, "--algebra", algebra, expr]);
    assert!(o.status.success(), "{}", stderr(&o));
    stdout(&o).trim_end().to_string()
}

#[test]
fn normal_forms() {
    assert_eq!(nf("matsumoto-ex1", "A", "b a"), "L^-1 a b");
    assert_eq!(nf("matsumoto-ex1", "A", "(a b)(a' b')"), "L a a' - L a^2 a'^2");
    assert_eq!(nf("matsumoto-ex1", "A", "a a' + b b'"), "1");
    assert_eq!(nf("matsumoto-ex1", "P", "b a"), "M^-1 a b");
    assert_eq!(nf("matsumoto-ex2", "cotensor", "alpha beta"), "(a b ⊗ a' b)");
}

#[test]
fn printed_normal_forms_parse_back() {
    for expr in ["(a + b')^3", "L b a' - 2 a^2", "(b a)^2 (a' b')"] {
        let once = nf("matsumoto-ex1", "A", expr);
        assert_eq!(nf("matsumoto-ex1", "A", &once), once, "{expr}");
    }
}

#[test]
fn json_report_is_deterministic() {
    let run = || {
        let o = cotensor(&[
            "verify",
            "--preset",
            "matsumoto-ex2",
            "--suite",
            "examples,connection",
            "--n-bound",
            "2",
            "--degree-bound",
            "3",
            "--format",
            "json",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v["generated_at"].as_str().unwrap().ends_with('Z'));
        v.as_object_mut().unwrap().remove("generated_at");
        v
    };
    let (first, second) = (run(), run());
    assert_eq!(first, second);
    assert_eq!(first["suites"], serde_json::json!(["connection", "examples"]));
    let results = first["results"].as_array().unwrap();
    assert_eq!(first["passed"].as_u64().unwrap() as usize, results.len());
    assert_eq!(first["failed"], 0);
    for r in results {
        for key in ["suite", "check_id", "paper_anchor", "status", "detail"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn text_report_ends_with_totals() {
    let o = cotensor(&[
        "verify",
        "--preset",
        "matsumoto-ex1",
        "--suite",
        "connection",
        "--n-bound",
        "2",
        "--degree-bound",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[..lines.len() - 1]
        .iter()
        .all(|l| l.starts_with("PASS connection ")));
    assert_eq!(*lines.last().unwrap(), format!("{} passed, 0 failed", lines.len() - 1));
}

#[test]
fn empty_suite_selection_warns() {
    let o = cotensor(&["verify", "--preset", "matsumoto-ex2", "--suite="]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("no suites selected"));
    assert_eq!(stdout(&o).trim(), "0 passed, 0 failed");
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(cotensor(&["verify", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(
        cotensor(&["verify", "--preset", "matsumoto-ex1", "--suite", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cotensor(&["verify", "--preset", "matsumoto-ex1", "--degree-bound", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cotensor(&["frobnicate"]).status.code(), Some(2));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        "name = \"broken\"\ngenerators = [\"x\", \"y\"]\nreductions = [\"x y = 1 +\"]\n"
    )
    .unwrap();
    let o = cotensor(&["nf", "--file", f.path().to_str().unwrap(), "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn failing_checks_exit_one() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "[connection.P.values]\n\"1\" = \"2 (a' | a) + (b' | b)\"").unwrap();
    let o = cotensor(&[
        "verify",
        "--preset",
        "matsumoto-ex2",
        "--suite",
        "connection",
        "--n-bound",
        "2",
        "--degree-bound",
        "3",
        "--connection",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("FAIL connection matsumoto(P):str2")));
}

#[test]
fn compose_and_coinvariants() {
    let o = cotensor(&["compose", "--preset", "matsumoto-ex2", "-n", "1"]);
    assert_eq!(
        stdout(&o).trim(),
        "((a ⊗ a') ⊗ (a' ⊗ a)) + ((b ⊗ a') ⊗ (b' ⊗ a)) + ((a' ⊗ b') ⊗ (a ⊗ b)) + ((b' ⊗ b') ⊗ (b ⊗ b))"
    );
    let o = cotensor(&["compose", "--preset", "matsumoto-ex2", "-n", "0"]);
    assert_eq!(stdout(&o).trim(), "((1 ⊗ 1) ⊗ (1 ⊗ 1))");

    let o = cotensor(&["coinv", "--preset", "matsumoto-ex1", "--algebra", "P", "--degree", "2"]);
    let basis: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    for x in ["1", "a a'", "a b'", "a' b"] {
        assert!(basis.iter().any(|b| b == x), "{x} missing from {basis:?}");
    }
    let o = cotensor(&["coinv", "--preset", "matsumoto-ex1", "--degree", "0"]);
    assert_eq!(stdout(&o).trim(), "(1 ⊗ 1)");
}
