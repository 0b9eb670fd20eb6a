use std::path::PathBuf;
use std::process::{Command, Output};

use cambrian::io::read_reports;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cambrian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn systems() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems")
}

#[test]
fn sortword_examples() {
    let out = run(&[
        "sortword",
        "--type",
        "A4",
        "--gamma",
        "s1,s2,s3,s4",
        "--word",
        "s1,s2,s1,s4",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("s1 s2 s4 | s1"));

    let out = run(&["sortword", "--type", "A3", "--word", ""]);
    assert_eq!(stdout(&out).lines().next(), Some(""));

    let out = run(&["sortword", "--type", "A3", "--word", "s2,s3,s2,s1"]);
    let text = stdout(&out);
    assert!(text.contains("alpha: {2,3,5,7}"));
    assert!(text.contains("sortable: false"));

    let out = run(&["sortword", "--type", "A3", "--word", "s1,s9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sortable_and_project() {
    let out = run(&["sortable", "--type", "A3", "--word", "s1 s2 s3 s2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("sortable: true"));
    let out = run(&["project", "--type", "A3", "--word", "s2 s3 s2 s1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first = text.lines().next().unwrap();
    let projected = run(&["sortable", "--type", "A3", "--word", first]);
    assert!(stdout(&projected).starts_with("sortable: true"));
}

#[test]
fn build_writes_reports_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let reports = dir.path().join("b3.jsonl");
    let summary = dir.path().join("b3.json");
    let file = systems().join("b3.toml");
    let out = run(&[
        "build",
        "--system",
        file.to_str().unwrap(),
        "--out",
        reports.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let s: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["elements"], 20);
    assert_eq!(s["el_pass_rate"], 1.0);
    let parsed = read_reports(&std::fs::read_to_string(&reports).unwrap()).unwrap();
    assert_eq!(parsed.len() as u64, s["intervals"].as_u64().unwrap());
    assert!(parsed.iter().all(|r| r.el_pass && r.mobius_consistent()));

    // byte-stable across runs
    let again = dir.path().join("again.jsonl");
    run(&[
        "build",
        "--system",
        file.to_str().unwrap(),
        "--out",
        again.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&reports).unwrap(),
        std::fs::read(&again).unwrap()
    );
}

#[test]
fn infinite_groups_need_a_cap() {
    let file = systems().join("affine_a2.toml");
    let out = run(&["build", "--system", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = run(&["elcheck", "--system", file.to_str().unwrap(), "--cap", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("95 intervals, 0 EL failures"));
}

#[test]
fn interval_queries() {
    let out = run(&[
        "mobius",
        "--type",
        "B3",
        "--upper",
        "s1 s2 s3 s1 s2 s3 s1 s2 s3",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "recursion: -1\nchain count: -1\nfalling chains: -1\n"
    );

    let out = run(&["homotopy", "--type", "A3", "--lower", "e", "--upper", "s1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "sphere S^-1\nnuclear: true\n");

    let out = run(&["interval", "--type", "A3", "--upper", "s1 s2 s3"]);
    assert!(out.status.success());
    let r: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r["upper_sorting"], "s1 s2 s3");

    let out = run(&["interval", "--type", "A3", "--lower", "s1", "--upper", "s2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exports() {
    let out = run(&["export", "--type", "A3", "--format", "diagram"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert_eq!(dot.matches(" -> ").count(), 21);
    assert_eq!(
        dot.matches("[label=\"").count() - dot.matches(" -> ").count(),
        14
    );

    let out = run(&["export", "--type", "A3", "--fibers"]);
    let dot = stdout(&out);
    // 24 elements in 14 classes: clustered nodes exceed clusters by 10
    let clusters = dot.matches("subgraph cluster_").count();
    let clustered = dot.lines().filter(|l| l.starts_with("    n")).count();
    assert_eq!(clustered, clusters + 10);
    assert_eq!(dot.matches(" -> ").count(), 36);

    let out = run(&["export", "--type", "A3", "--format", "report"]);
    assert_eq!(read_reports(&stdout(&out)).unwrap().len(), 68);
}

#[test]
fn fibers_and_invariance() {
    let out = run(&["fibers", "--type", "A3"]);
    assert!(stdout(&out).ends_with("14 fibers\n"));
    let out = run(&["invariance", "--type", "B3", "--gamma", "s1,s3,s2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("s1,s3,s2  s3,s1,s2"));
    assert!(text.contains("consistent: true"));
}
