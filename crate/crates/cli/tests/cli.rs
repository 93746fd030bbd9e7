use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pairgeom")).args(args).env_remove("GEOM_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pairgeom-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn header(o: &Output) -> Value {
    serde_json::from_str(stdout(o).lines().next().unwrap()).unwrap()
}

#[test]
fn enumerate_projective_plane_over_f2() {
    let o = run(&["enumerate", "--field", "2", "--dim", "3", "--grass", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o)["count"], 7);
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn enumerate_complete_flags_of_plane_over_f3() {
    let o = run(&["enumerate", "--field", "3", "--dim", "2", "--flags", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o)["count"], 4);
}

#[test]
fn enumerate_lagrangian_flags() {
    let o = run(&["enumerate", "--field", "3", "--dim", "4", "--grass", "2", "--lagrangian", "symplectic"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o)["count"], 40);
}

#[test]
fn zero_dimension_is_a_config_error() {
    let o = run(&["enumerate", "--field", "2", "--dim", "0", "--grass", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_arguments_are_config_errors() {
    assert_eq!(run(&["enumerate", "--field", "4", "--dim", "2", "--grass", "1"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(3));
}

#[test]
fn budget_exceeded_leaves_no_output_file() {
    let out = scratch("budget.jsonl");
    let o = run(&["--budget", "5", "enumerate", "--field", "2", "--dim", "3", "--grass", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    let partial = out.with_extension("jsonl.partial");
    assert!(!partial.exists());
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pairgeom"))
        .args(["enumerate", "--field", "2", "--dim", "3", "--grass", "1"])
        .env("GEOM_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let out = scratch("plane.jsonl");
    let args = ["enumerate", "--field", "2", "--dim", "3", "--grass", "1"];
    let o = run(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap(), stdout(&run(&args)));
}

#[test]
fn list_suites() {
    let o = run(&["verify", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["suites"], 10);
    assert!(lines[1..].iter().all(|l| l["suite"].is_string() && l["checks"].is_string()));
}

#[test]
fn verify_grading_roundtrip_suite() {
    let o = run(&["verify", "--suite", "prop33", "--field", "2", "--dim", "4", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["header"]["seed"], 0);
}

fn closure_of(lines: &[&str], p: &str, name: &str) -> Output {
    let path = scratch(name);
    fs::write(&path, lines.join("\n")).unwrap();
    run(&["closure", "--field", p, "--dim", "3", "--grass", "1", "--points", path.to_str().unwrap()])
}

fn plane_points(p: &str) -> Vec<String> {
    stdout(&run(&["enumerate", "--field", p, "--dim", "3", "--grass", "1"])).lines().skip(1).map(String::from).collect()
}

#[test]
fn closure_of_single_point_is_itself() {
    let pts = plane_points("3");
    let o = closure_of(&[&pts[0]], "3", "one.jsonl");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 1);
    assert_eq!(v["classification"]["kind"], "point");
}

#[test]
fn two_points_over_f2_are_closed() {
    let pts = plane_points("2");
    let v: Value = serde_json::from_str(&stdout(&closure_of(&[&pts[0], &pts[1]], "2", "two2.jsonl"))).unwrap();
    assert_eq!(v["size"], 2);
}

#[test]
fn two_points_over_f3_span_a_line() {
    let pts = plane_points("3");
    let v: Value = serde_json::from_str(&stdout(&closure_of(&[&pts[0], &pts[1]], "3", "two3.jsonl"))).unwrap();
    assert_eq!(v["input_size"], 2);
    assert_eq!(v["size"], 4);
    assert_eq!(v["classification"]["kind"], "governed");
}

#[test]
fn malformed_points_report_line_number() {
    let pts = plane_points("3");
    let o = closure_of(&[&pts[0], "{\"bad\""], "3", "bad.jsonl");
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn horizon_experiment() {
    let o = run(&["experiment", "horizon", "--field", "3", "--dim", "3", "--grass", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["intrinsic"], true);
}

#[test]
fn squeeze_experiment() {
    let o = run(&["experiment", "squeeze", "--field", "3", "--pq", "1,1", "--rank", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["subset_holds"], true);
    assert_eq!(v["result"]["orbit"], 4);
}

#[test]
fn unknown_experiment_is_a_config_error() {
    assert_eq!(run(&["experiment", "nope"]).status.code(), Some(3));
}
