use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normkit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn tri_info_envelope() {
    let out = run(&["tri", "info", "fixture:one-tet-solid-torus"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tool"], "normkit");
    assert_eq!(v["command"], "tri info");
    assert_eq!(v["input_hash"].as_str().unwrap().len(), 64);
    assert_eq!(v["result"]["boundary"][0]["one_vertex_torus"], true);
}

#[test]
fn enumerate_unglued_tetrahedron() {
    let v = json(&run(&["ns", "enumerate", "fixture:unglued-tetrahedron", "--fundamental"]));
    assert_eq!(v["result"]["count"], 7);
    assert_eq!(v["result"]["complete"], true);
}

#[test]
fn fill_output_is_a_valid_table() {
    let v = json(&run(&["fill", "fixture:two-boundary", "--boundary", "B0", "--slope", "1/0"]));
    let table = &v["result"]["filling"]["triangulation"];
    let dir = std::env::temp_dir().join(format!("normkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("filled.json");
    std::fs::write(&path, table.to_string()).unwrap();
    let out = run(&["tri", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn search_exit_codes() {
    assert_eq!(run(&["search", "planar", "fixture:knot-2tet"]).status.code(), Some(0));
    let out = run(&["search", "planar", "fixture:knot-3tet-zero-efficient"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["outcome"]["Inconclusive"][0], "OracleUnknown");
    let out = run(&["search", "punctured-disk", "fixture:one-tet-solid-torus", "--boundary", "B0", "--slope", "1/0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["outcome"], "NotFound");
}

#[test]
fn errors_are_structured() {
    let out = run(&["tri", "check", "/nonexistent/table.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "io");
    let out = run(&["ns", "enumerate", "fixture:nope"]);
    assert_eq!(json(&out)["error"]["code"], "usage");
    let out = run(&["fill", "fixture:two-boundary", "--boundary", "B0", "--slope", "2/4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "kernel");
}

#[test]
fn budget_flags_make_runs_inconclusive() {
    let out = run(&["search", "planar", "fixture:knot-2tet", "--budget-rays", "2", "--budget-pairs", "4", "--budget-candidates", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["budget"]["cone"]["max_rays"], 2);
}

#[test]
fn text_format() {
    let out = run(&["--format", "text", "slopes", "short", "fixture:knot-2tet", "--bound", "3", "--boundary", "B0"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("0/1@B0"));
    assert!(serde_json::from_str::<Value>(&s).is_err());
}

#[test]
fn lst_build_reports_counts() {
    let v = json(&run(&["lst", "build", "--slope", "5/-2"]));
    assert!(v["result"].is_object());
    assert_eq!(run(&["lst", "build", "--slope", "5/-2"]).status.code(), Some(0));
}

#[test]
fn ale_reports_hypotheses() {
    let v = json(&run(&["ale", "fixture:knot-2tet"]));
    assert_eq!(v["result"]["constant"], "6");
    assert_eq!(v["result"]["hypotheses"]["assumed"].as_array().unwrap().len(), 3);
    assert!(v["result"]["hypotheses"]["audited"]["zero_efficient"].is_boolean());
}
