//! End-to-end tests of the `mapprog` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mapprog"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn solve_prints_the_single_answer_set() {
    for mode in ["relevant", "full"] {
        let o = run(&["solve", "--mode", mode, &fixture("jobs.spec")]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "{Jobs_DB(a,b), Boss(a), Empl(a)}\n");
    }
}

#[test]
fn solve_json_lines() {
    let o = run(&["--json", "solve", &fixture("jobs.spec")]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["atoms"], serde_json::json!(["Jobs_DB(a,b)", "Boss(a)", "Empl(a)"]));
    assert_eq!(lines[1]["answer_sets"], 1);
    assert_eq!(lines[1]["stats"]["bound_violations"], 0);
}

#[test]
fn solve_without_answer_sets() {
    let o = run(&["solve", &fixture("extensional.spec")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
    assert!(String::from_utf8_lossy(&o.stderr).contains("no answer sets"));
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = fixture("jobs.spec");
    assert_eq!(run(&["check", &spec, &fixture("A.facts")]).status.code(), Some(0));

    let not_model = write_temp(&dir, "empl.facts", "Jobs_DB(a, b).\nEmpl(a).\n");
    assert_eq!(run(&["check", &spec, &not_model]).status.code(), Some(1));

    let not_minimal = write_temp(&dir, "more.facts", "Empl(a).\nBoss(a).\nEmpl(b).\n");
    assert_eq!(run(&["check", &spec, &not_minimal]).status.code(), Some(1));

    let foreign = write_temp(&dir, "foreign.facts", "Jobs_DB(b, b).\nEmpl(a).\nBoss(a).\n");
    assert_eq!(run(&["check", &spec, &foreign]).status.code(), Some(2));

    let o = run(&["--json", "check", &spec, &fixture("A.facts")]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"]["verdict"], "answer-set");
}

#[test]
fn check_reports_inconsistent_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_temp(
        &dir,
        "disjoint.spec",
        "%ontology\nEmpl [= not Boss.\n%mapping\nEmpl(X) <- @r(X).\n%database\nr(a).\n",
    );
    let candidate = write_temp(&dir, "c.facts", "Empl(a).\nBoss(a).\n");
    assert_eq!(run(&["check", &spec, &candidate]).status.code(), Some(2));
}

#[test]
fn query_cautious_and_brave() {
    let spec = fixture("jobs.spec");
    let q = "exists Y. hasSup(Y, a)";
    let o = run(&["query", &spec, "--cautious", q]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
    let o = run(&["query", &spec, "--brave", "hasSup(a, b)"]);
    assert_eq!(stdout(&o).trim(), "false");
    let o = run(&["query", &spec, "--cautious", "Empl(X)"]);
    assert!(stdout(&o).contains('a'));
}

#[test]
fn ground_prints_the_partial_grounding() {
    let o = run(&["ground", "--mode", "full", &fixture("jobs.spec")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text
        .lines()
        .any(|l| l == "hasSup(a, sk_z(a)) <- not depHeadOf(a, _E1), Empl(a), @Jobs_DB(a, b)."));
}

#[test]
fn rewrite_with_and_without_ontology() {
    let q = "exists Y. hasSup(Y, a)";
    let o = run(&["rewrite", q, "--spec", &fixture("jobs.spec")]);
    assert_eq!(stdout(&o), "Boss(a)\nexists _E1. hasSup(_E1,a)\n");
    let o = run(&["rewrite", q]);
    assert_eq!(stdout(&o), "exists _E1. hasSup(_E1,a)\n");
}

#[test]
fn compile_writes_asp() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("jobs.lp");
    let o = run(&["compile", &fixture("jobs.spec"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("% generated by mapprog\n"));
    assert!(text.contains("boss(a).\n"));
    assert!(text.contains("empl(a).\n"));
    assert!(text.contains("hassup(a,skf_z_a) :- empl(a), not boss(a), not aux_"));
    assert_eq!(stdout(&run(&["compile", &fixture("jobs.spec")])), text);
}

#[test]
fn stats_compare_with_bounds() {
    let o = run(&["stats", &fixture("jobs.spec")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("bound violations: 0"));
    assert!(text.contains("make_reduct negative calls"));
}

#[test]
fn csv_facts_extend_the_database() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_temp(
        &dir,
        "staff.spec",
        "%mapping\nEmpl(X) <- @staff(X, D).\nBoss(X) <- @staff(X, head).\n",
    );
    let csv = write_temp(&dir, "staff.csv", "name,dept\nann,head\nbob,sales\n");
    let o = run(&["solve", &spec, "--facts", &csv]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{staff(ann,head), staff(bob,sales), Boss(ann), Empl(ann), Empl(bob)}\n"
    );
}

#[test]
fn input_and_cap_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "bad.spec", "%mapping\nEmpl(X) <- \n");
    let o = run(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.spec:"));

    assert_eq!(run(&["solve", "/nonexistent.spec"]).status.code(), Some(2));

    let o = run(&["solve", "--candidates", "full-base", &fixture("jobs.spec")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--json", "solve"],
        vec!["ground", "--mode", "full"],
        vec!["compile"],
        vec!["stats"],
    ] {
        let mut full = args.clone();
        let spec = fixture("jobs.spec");
        full.push(&spec);
        let first = run(&full);
        let second = run(&full);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
