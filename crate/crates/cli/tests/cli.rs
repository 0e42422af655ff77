use std::path::PathBuf;
use std::process::{Command, Output};

use pltl_core::automata::AutomatonDump;

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pltl-arena"))
        .args(args)
        .env_remove("PLTL_ARENA_MAX_BOUND")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const PHI1: &str = "F<=x p";
const PHI2: &str = "G(q -> F<=x p)";
const PHI3: &str = "G<=y p";

#[test]
fn member_exit_codes() {
    let path = data("a-path.gm");
    let yes = run(&["--format", "record", "member", "--arena", &path, "--formula", PHI1, "--val", "x=2"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("result = true\n"));
    let no = run(&["--format", "record", "member", "--arena", &path, "--formula", PHI1, "--val", "x=1"]);
    assert_eq!(no.status.code(), Some(2));
    assert!(stdout(&no).contains("result = false\n"));
    let p1 = run(&["member", "--arena", &path, "--formula", PHI1, "--val", "x=1", "--player", "1"]);
    assert_eq!(p1.status.code(), Some(0));
}

#[test]
fn decision_queries() {
    let stall = data("a-stall.gm");
    let o = run(&["--format", "record", "empty", "--arena", &stall, "--formula", PHI2, "--player", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result = true\n"));
    let o = run(&["universal", "--arena", &data("a-loop.gm"), "--formula", PHI3]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["finite", "--arena", &data("a-loop.gm"), "--formula", PHI1]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["finite", "--arena", &data("a-ppe.gm"), "--formula", PHI3]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn optimize_statuses() {
    let o = run(&["--format", "record", "optimize", "--objective", "min-max", "--arena", &data("a-delay.gm"), "--formula", PHI2]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("status = value\n"));
    assert!(out.contains("value = 2\n"));

    let o = run(&["--format", "record", "optimize", "--objective", "min-max", "--arena", &data("a-emptyloop.gm"), "--formula", PHI1]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("status = none\n"));

    let o = run(&["--format", "record", "optimize", "--objective", "max-max", "--arena", &data("a-loop.gm"), "--formula", PHI3]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status = unbounded\n"));

    let o = run(&["--format", "record", "optimize", "--objective", "max-max", "--arena", &data("a-ppe.gm"), "--formula", PHI3]);
    assert!(stdout(&o).contains("value = 1\n"));
}

#[test]
fn max_bound_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pltl-arena"))
        .args(["--format", "record", "optimize", "--objective", "min-max", "--arena", &data("a-path.gm"), "--formula", PHI1])
        .env("PLTL_ARENA_MAX_BOUND", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("status = none-within\n"));
    assert!(out.contains("message = no winning valuation <= 1\n"));
}

#[test]
fn synthesize_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.txt");
    let file = file.to_str().unwrap();
    let delay = data("a-delay.gm");
    let o = run(&["synthesize", "--arena", &delay, "--formula", PHI2, "--val", "x=2", "--out", file]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--format", "record", "verify", "--arena", &delay, "--formula", PHI2, "--val", "x=2", "--strategy", file]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result = true\n"));
    // the same strategy does not meet a tighter bound
    let o = run(&["--format", "record", "verify", "--arena", &delay, "--formula", PHI2, "--val", "x=1", "--strategy", file]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("counterexample = "));

    let o = run(&["synthesize", "--arena", &data("a-stall.gm"), "--formula", PHI2, "--val", "x=3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn translate_dumps_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["translate", "--formula", PHI2, "--val", "x=2", "--emit-automata", d]);
    assert_eq!(o.status.code(), Some(0));
    for stage in ["gnba", "nba", "dpa"] {
        let text = std::fs::read_to_string(dir.path().join(format!("{stage}.aut"))).unwrap();
        let parsed = AutomatonDump::parse(&text).unwrap();
        assert_eq!(parsed.emit(), text, "{stage}");
    }
    let again = tempfile::tempdir().unwrap();
    run(&["translate", "--formula", PHI2, "--val", "x=2", "--emit-automata", again.path().to_str().unwrap()]);
    for stage in ["gnba", "nba", "dpa"] {
        let a = std::fs::read(dir.path().join(format!("{stage}.aut"))).unwrap();
        let b = std::fs::read(again.path().join(format!("{stage}.aut"))).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn solve_parity_output() {
    let o = run(&["solve-parity", &data("small.pg")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("region 1 a b c\n"));
    assert!(out.contains("move b 0 -> "));
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["member", "--arena", "/nonexistent", "--formula", PHI1]).status.code(), Some(1));
    let o = run(&["member", "--arena", &data("a-loop.gm"), "--formula", "F<= x"]);
    assert_eq!(o.status.code(), Some(1));
    // missing binding for x
    let o = run(&["member", "--arena", &data("a-loop.gm"), "--formula", PHI1]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["optimize", "--objective", "max-max", "--arena", &data("a-loop.gm"), "--formula", PHI1]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "record", "optimize", "--objective", "min-min", "--arena", &data("a-path.gm"), "--formula", "F<=x p & F<=z p", "--jobs", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("value = 2\n"));
}
