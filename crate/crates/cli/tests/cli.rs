use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/../core/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enarena"))
        .args(args)
        .env_remove("ENARENA_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn solve_soft_bound_queries() {
    let f = data("soft_bound.arena");
    let base = ["solve", &f, "--kind", "LV", "--L", "0", "--S", "3", "--U", "6", "--measure", "count"];
    let out = run(&[&base[..], &["--V", "3"]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["winner"], "P1");
    let out = run(&[&base[..], &["--V", "1"]].concat());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["winner"], "P2");
}

#[test]
fn stable_output_is_byte_identical() {
    let f = data("weak_bound.arena");
    let args = ["solve", &f, "--kind", "LW", "--L", "0", "--W", "5", "--stable"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("wallMs"));
    assert!(String::from_utf8_lossy(&run(&args[..8]).stdout).contains("wallMs"));
}

#[test]
fn inconsistent_flags_are_usage_errors() {
    let f = data("weak_bound.arena");
    for args in [
        vec!["solve", &f, "--kind", "LW", "--L", "0"],
        vec!["solve", &f, "--kind", "LW", "--L", "0", "--W", "5", "--U", "6"],
        vec!["solve", &f, "--kind", "LU", "--L", "3", "--U", "1"],
        vec!["solve", "/nonexistent.arena", "--kind", "L", "--L", "0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn trace_csv() {
    let f = data("weak_bound.arena");
    let out = run(&["trace", &f, "--kind", "LW", "--L", "0", "--W", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("index,state,level"));
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(&last[1..], ["qt", "0"]);

    let f = data("soft_bound.arena");
    let out = run(&["trace", &f, "--kind", "LV", "--L", "0", "--S", "3", "--U", "6", "--V", "3", "--measure", "count"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| (r[2].parse::<i64>().unwrap() > 3).to_string() == r[3]));
    assert_eq!(rows.last().unwrap()[1], "qt");

    let out = run(&["trace", &f, "--kind", "LV", "--L", "0", "--S", "3", "--U", "6", "--V", "0", "--measure", "count"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trace_trivial_target() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("one.arena");
    std::fs::write(&p, "state a owner=1 init target\nedge a 0 a\n").unwrap();
    let out = run(&["trace", p.to_str().unwrap(), "--kind", "L", "--L", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "index,state,level\n0,a,2\n");
}

#[test]
fn witness_json_and_csv() {
    let f = data("weak_bound.arena");
    let q = ["witness", &f, "--kind", "LW", "--L", "0", "--W", "5"];
    let w = json(&run(&q));
    assert_eq!(w["length"], 20);
    assert!(w["compact"]["segments"].as_array().unwrap().iter().any(|s| s["kind"] == "set_jump"));
    let csv = run(&[&q[..], &["--expand"]].concat());
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 22);
}

#[test]
fn minimize_and_exists_bound() {
    let f = data("soft_bound.arena");
    let out = run(&["minimize", &f, "--L", "0", "--S", "3", "--V-max", "10", "--measure", "count"]);
    let v = json(&out);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["bestV", "bestU", "winner", "witnessLength"]);
    let (best_v, best_u) = (v["bestV"].as_i64().unwrap(), v["bestU"].as_i64().unwrap());

    let exists = |vv: i64| json(&run(&["exists-bound", &f, "--L", "0", "--S", "3", "--V", &vv.to_string()]));
    assert!(exists(best_v)["U"].as_i64().unwrap() >= best_u);
    assert_eq!(exists(best_v - 1)["U"], Value::Null);
}

#[test]
fn reduce_and_expand() {
    let f = data("two_cycles.arena");
    let text = run(&["reduce", &f, "--direction", "energy-to-reach", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.starts_with("# scale 7\n"));
    assert!(text.contains("# q0 -> q0 q0_c\n"));
    let j = json(&run(&["reduce", &data("weak_bound.arena"), "--direction", "reach-to-energy"]));
    assert!(j["arena"].is_object());
    assert_eq!(j["scale"], 7);

    let f = data("weak_bound.arena");
    let x = json(&run(&["expand", &f, "--kind", "LW", "--L", "0", "--W", "5"]));
    assert_eq!(x["init"], "q0@0");
    assert!(x["targets"].as_array().unwrap().iter().any(|t| t == "qt@0"));
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..2).map(|i| dir.path().join(format!("g{i}.json"))).collect();
    for p in &paths {
        let out = run(&["gen", "--seed", "1", "--states", "4", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());

    let from_env = Command::new(env!("CARGO_BIN_EXE_enarena"))
        .args(["gen", "--states", "4"])
        .env("ENARENA_SEED", "1")
        .output()
        .unwrap();
    assert_eq!(from_env.stdout, std::fs::read(&paths[0]).unwrap());

    // the generated file is a valid input
    let out = run(&["solve", paths[0].to_str().unwrap(), "--kind", "L", "--L", "0"]);
    assert!(matches!(out.status.code(), Some(0 | 2)));
}

#[test]
fn crosscheck_command() {
    let out = run(&["crosscheck", "--pair", "lwpoly:exglw", "--seeds", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r[0]["instances"], 200);

    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("p.json");
    std::fs::write(&params, r#"{"nStates": 3, "p2Fraction": 0.5}"#).unwrap();
    let out = run(&["crosscheck", "--pair", "lw2p:enum", "--seeds", "20", "--params", params.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    assert_eq!(run(&["crosscheck", "--pair", "nope"]).status.code(), Some(2));
}
