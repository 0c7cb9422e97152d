use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dgspan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgspan")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn params_of_the_square() {
    let out = dgspan(&["params", "--shape", "square"]);
    assert!(out.status.success());
    let v = json(&out);
    let t = v["t_triangulation"].as_f64().unwrap();
    let alpha = v["alpha"].as_f64().unwrap();
    assert!(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2);
    assert!(t >= 1.0);
    assert_eq!(out.stdout, dgspan(&["params", "--shape", "square"]).stdout);
}

#[test]
fn build_then_verify_a_saved_graph() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let out = dgspan(&["build", "--shape", "regular-6", "--gen", "clustered", "--n", "15", "--seeds", "4", "--rational", "--out-json", p(&graph)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = dir.path().join("v.svg");
    let out = dgspan(&["verify", "--shape", "regular-6", "--graph", p(&graph), "--out-svg", p(&svg)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["report"]["passed"], Value::Bool(true));
    assert_eq!(v["report"]["n"].as_u64(), Some(15));
    assert!(std::fs::read_to_string(svg).unwrap().contains("witness"));
}

#[test]
fn a_broken_graph_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let out = dgspan(&["build", "--shape", "square", "--n", "12", "--out-json", p(&graph)]);
    assert!(out.status.success());
    let mut g: Value = serde_json::from_str(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    let (key, w) = g["witnesses"].as_object().unwrap().iter().next().map(|(k, v)| (k.clone(), v.clone())).unwrap();
    assert!(w["scale"].is_string() || w["scale"].is_number());
    g["witnesses"][&key]["scale"] = Value::String("1000".into());
    std::fs::write(&graph, serde_json::to_string(&g).unwrap()).unwrap();
    let out = dgspan(&["verify", "--shape", "square", "--graph", p(&graph)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["report"]["witness_failures"].as_u64(), Some(1));
}

#[test]
fn stretch_and_oracle_diff() {
    let out = dgspan(&["stretch", "--shape", "equilateral-triangle", "--n", "25", "--seeds", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["max_stretch"].as_f64().unwrap() <= 2.0 + 1e-9);
    assert_eq!(v["per_pair_stretch"].as_array().unwrap().len(), 25);

    let out = dgspan(&["oracle-diff", "--shape", "regular-5", "--gen", "cocircular", "--n", "7", "--oracle-res", "256"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["equal"], Value::Bool(true));
}

#[test]
fn render_and_run() {
    let out = dgspan(&["render", "--shape", "square", "--n", "10", "--witnesses", "--diamonds", "--path", "0,3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = String::from_utf8(out.stdout).unwrap();
    assert_eq!(svg.matches("<circle").count(), 10);
    assert!(svg.contains("class=\"path\""));

    let out = dgspan(&["run", "--shape", "square", "--n", "20", "--seeds", "0..3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["instances"].as_array().unwrap().len(), 3);
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["params", "--shape", "blob"][..],
        &["run", "--seeds", "5..2"],
        &["build", "--gen", "spiral"],
        &["render", "--path", "1,1"],
        &["verify", "--graph", "/nonexistent/g.json"],
    ] {
        assert_eq!(dgspan(args).status.code(), Some(2), "{args:?}");
    }
}
