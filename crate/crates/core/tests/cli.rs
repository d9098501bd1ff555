use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sspflow::network::{write_instance, FlowNetwork};
use tempfile::TempDir;

fn sspflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sspflow")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Two disjoint unit-capacity paths of cost 0.3 and 0.7 from node 0 to 3.
fn two_paths(dir: &TempDir) -> std::path::PathBuf {
    let mut b = FlowNetwork::builder(4);
    b.edge(0, 1, 1.0, 0.1);
    b.edge(1, 3, 1.0, 0.2);
    b.edge(0, 2, 1.0, 0.3);
    b.edge(2, 3, 1.0, 0.4);
    b.balance(0, 2.0).balance(3, -2.0);
    let path = dir.path().join("two.min");
    fs::write(&path, write_instance(&b.build().unwrap())).unwrap();
    path
}

#[test]
fn solve_writes_trace_and_exits_zero() {
    let dir = TempDir::new().unwrap();
    let inst = two_paths(&dir);
    let out = sspflow(&["solve", path_str(&inst), "--verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = stdout(&out);
    assert_eq!(csv.lines().count(), 3, "{csv}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("strict-length-increase: PASS"));
}

#[test]
fn unreachable_value_exits_two() {
    let dir = TempDir::new().unwrap();
    let inst = two_paths(&dir);
    let out = sspflow(&["solve", path_str(&inst), "--z", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bad_input_exits_one() {
    let dir = TempDir::new().unwrap();
    let junk = dir.path().join("junk.min");
    fs::write(&junk, "p min 2 1\nthis is not an arc\n").unwrap();
    assert_eq!(code(&sspflow(&["solve", path_str(&junk)])), 1);
    assert_eq!(code(&sspflow(&["solve", "/nonexistent/instance.min"])), 1);
    assert_eq!(code(&sspflow(&["solve"])), 1);
    assert_eq!(code(&sspflow(&["lowerbound", "--n", "4", "--m", "40", "--phi", "64"])), 1);
}

#[test]
fn generate_is_deterministic_and_feeds_other_commands() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.min");
    let b = dir.path().join("b.min");
    for p in [&a, &b] {
        let out = sspflow(&["generate", "--n", "8", "--m", "20", "--phi", "4", "--seed", "9", "--out", path_str(p)]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let csv = dir.path().join("cf.csv");
    let plot = dir.path().join("cf.gp");
    let out = sspflow(&["costfn", path_str(&a), "--out", path_str(&csv), "--gnuplot", path_str(&plot)]);
    assert_eq!(code(&out), 0);
    assert!(fs::read_to_string(&csv).unwrap().starts_with("x,y,slope_right\n"));
    assert!(fs::read_to_string(&plot).unwrap().contains(path_str(&csv)));

    let report = dir.path().join("lemmas.csv");
    assert_eq!(code(&sspflow(&["verify", path_str(&a), "--out", path_str(&report)])), 0);
    assert!(fs::read_to_string(&report).unwrap().starts_with("lemma_id,pass,first_violation_step\n"));

    let out = sspflow(&["reconstruct-check", path_str(&a)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("flow_mismatches=0"));
}

#[test]
fn lowerbound_reports_exact_counts() {
    let out = sspflow(&["lowerbound", "--n", "8", "--m", "16", "--phi", "64", "--seeds", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",256,256,ok")), "{text}");

    let out = sspflow(&["lowerbound", "--n", "5", "--m", "10", "--phi", "64", "--stage", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0,40,40,ok"));
}

#[test]
fn experiment_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let runs: Vec<_> = ["r1", "r2"]
        .iter()
        .map(|name| {
            let out_dir = dir.path().join(name);
            let args =
                ["experiment", "--n", "6", "--m", "2n,n^2/2", "--phi", "1,10", "--trials", "4", "--out", path_str(&out_dir)];
            assert_eq!(code(&sspflow(&args)), 0);
            (fs::read(out_dir.join("results.csv")).unwrap(), fs::read(out_dir.join("summary.csv")).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(String::from_utf8_lossy(&runs[0].1).lines().count(), 5);
}
