use std::path::PathBuf;
use std::process::{Command, Output};

fn apollo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apollo")).args(args).output().expect("run apollo")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = apollo(&full);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?} is not one JSON document: {e}"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("apollo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn depth_examples() {
    let o = apollo(&["depth", "--z", "1", "0.5"]);
    assert_eq!(stdout(&o).trim(), "depth 1");
    let o = apollo(&["depth", "--triple", "1", "2", "-3"]);
    assert_eq!(stdout(&o).trim(), "depth 0");
    let o = apollo(&["depth", "--triple", "179", "62", "23"]);
    assert_eq!(stdout(&o).trim(), "depth 4");
    assert!(String::from_utf8_lossy(&o.stderr).contains("WARNING"));
    let v = json(&["depth", "--triple", "358", "124", "46", "--trace"]);
    assert_eq!(v["depth"], 4);
    assert_eq!(v["chain"].as_array().unwrap().len(), 5);
    assert!(v["warning"].is_string());
}

#[test]
fn depth_of_point_reports_word() {
    let v = json(&["depth", "--z", "2", "1/2", "--trace"]);
    assert_eq!(v["depth"], 2);
    assert_eq!(v["plane_depth"], 2);
    assert_eq!(v["word"], serde_json::json!([2]));
}

#[test]
fn exit_codes() {
    assert_eq!(apollo(&["depth", "--triple", "1", "x", "2"]).status.code(), Some(2));
    assert_eq!(apollo(&["depth", "--triple", "1", "2"]).status.code(), Some(2));
    assert_eq!(apollo(&["depth"]).status.code(), Some(2));
    assert_eq!(apollo(&["depth", "--triple", "1", "2", "3", "--z", "1", "1"]).status.code(), Some(2));
    assert_eq!(apollo(&["depth", "--bogus"]).status.code(), Some(2));
    assert_eq!(apollo(&["orbit", "--z", "0", "1", "--word", "SQ"]).status.code(), Some(2));
    assert_eq!(apollo(&["depth", "--triple", "1000", "1", "1", "--max-steps", "3"]).status.code(), Some(3));
    assert_eq!(apollo(&["verify", "--suite", "groups"]).status.code(), Some(0));
}

#[test]
fn rationals_are_exact() {
    let a = json(&["canonicalize", "--z", "0.5", "0.25"]);
    let b = json(&["canonicalize", "--z", "1/2", "1/4"]);
    assert_eq!(a, b);
}

#[test]
fn orbit_word_and_listing() {
    let v = json(&["orbit", "--z", "1/3", "1/4", "--word", "T"]);
    assert_eq!(v["image"], serde_json::json!({"x": "4/3", "y": "1/4"}));
    let v = json(&["orbit", "--z", "1/3", "1/4", "--word", "T^-1,S"]);
    assert_eq!(v["word"], serde_json::json!(["T^-1", "S"]));
    let v = json(&["orbit", "--z", "1/3", "1/4", "--length", "1"]);
    assert_eq!(v["points"].as_array().unwrap().len(), 6);
}

#[test]
fn packing_outputs() {
    let v = json(&["packing", "--max-curvature", "15"]);
    assert_eq!(v["disks"].as_array().unwrap().len(), 19);
    let svg = tmp("window.svg");
    let o = apollo(&["packing", "--max-curvature", "15", "--export", "svg", "-o", svg.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), 19);
    let o = apollo(&["packing", "--seed", "0", "0", "1", "1", "--max-curvature", "9", "--export", "svg"]);
    assert_eq!(stdout(&o).matches("<line").count(), 2);
    let o = apollo(&["packing", "--max-curvature", "6", "--export", "csv"]);
    assert!(stdout(&o).starts_with("index,curvature,cx,cy,level\n"));
    assert_eq!(apollo(&["packing", "--seed", "1", "1", "1", "1"]).status.code(), Some(2));
}

#[test]
fn graph_depth_outputs() {
    let v = json(&["graph-depth", "--max-curvature", "60"]);
    assert!(v["checked"].as_u64().unwrap() > 0);
    assert_eq!(v["mismatches"], serde_json::json!([]));
    let v = json(&["graph-depth", "--max-curvature", "30", "--vertex", "3", "2", "1"]);
    assert_eq!(v["graph_depth"], 1);
    assert_eq!(v["greedy_depth"], 1);
}

#[test]
fn tessellation_outputs() {
    let v = json(&["tessellation", "--words", "0"]);
    assert_eq!(v["layers"], serde_json::json!([7]));
    assert!(v["svg"].as_str().unwrap().starts_with("<?xml"));
    let o = apollo(&["tessellation", "--words", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_is_deterministic_across_thread_counts() {
    let (a, b) = (tmp("one.ppm"), tmp("many.ppm"));
    let run = |p: &PathBuf, threads: &str| {
        let args = ["render-depth", "--window", "-3", "3", "0", "1", "--size", "120", "40", "-o", p.to_str().unwrap()];
        let o = Command::new(env!("CARGO_BIN_EXE_apollo")).args(args).env("APOLLO_THREADS", threads).output().unwrap();
        assert!(o.status.success());
    };
    run(&a, "1");
    run(&b, "7");
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(x.starts_with(b"P6\n120 40\n255\n"));
    assert_eq!(x, y);
}

#[test]
fn verify_json_report() {
    let v = json(&["verify", "--suite", "depth"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["fail"], 0);
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.iter().any(|c| c["status"] == "DISCREPANCY" && c["claim"].as_str().unwrap().contains("179")));
}
