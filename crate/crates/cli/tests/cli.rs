use std::process::{Command, Output};

use freeinv::bipartite::parse_bipartite;
use freeinv::corpus::examples;
use freeinv::parse_poly;
use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freeinv")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().unwrap(), value)
}

#[test]
fn invert_elementary() {
    let (code, v) = run_json(&["invert", "-g", "2", "x1", "x2 - x1^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "inverse");
    assert_eq!(v["q"], json!(["x1", "x2 + x1^2"]));
    for field in ["iterations", "bound_B", "cap_used"] {
        assert!(v[field].is_u64(), "{field}: {v}");
    }
}

#[test]
fn invert_sandwich_rigorously() {
    let (code, v) = run_json(&["invert", "-g", "2", "x1", "x2 - x1*x2*x1", "--rigorous"]);
    assert_eq!(code, 1);
    assert_eq!(v["outcome"], "not-injective");
    assert_eq!(v["reason"], "degree-exceeded");
    assert_eq!(v["bound_B"], 145);
}

#[test]
fn small_cap_is_indeterminate() {
    let (code, v) = run_json(&["invert", "--cap", "2", "x1 + x2^2", "x2 + (x1 + x2^2)^2"]);
    assert_eq!(code, 3);
    assert_eq!(v["outcome"], "indeterminate");
    assert_eq!(v["cap_used"], 2);
}

#[test]
fn jacobian_display() {
    let out = run(&["jacobian", "-g", "2", "x1", "x2 - x1*x2*x1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[[1, -x2*x1], [0, 1]]");
    let (_, v) = run_json(&["jacobian", "x1", "x2 - x1*x2*x1"]);
    for row in v["jacobian"].as_array().unwrap() {
        for e in row.as_array().unwrap() {
            let s = e.as_str().unwrap();
            assert_eq!(parse_poly(s).unwrap().to_string(), s);
        }
    }
}

#[test]
fn methods_agree_on_corpus() {
    for e in examples() {
        let comps: Vec<String> = e.p.iter().map(ToString::to_string).collect();
        let mut codes = Vec::new();
        for cmd in [vec!["invert"], vec!["check-injective", "--method", "aux-inverse"], vec!["check-injective", "--method", "hypo-jacobian"]] {
            let mut args: Vec<&str> = cmd;
            args.push("--");
            args.extend(comps.iter().map(String::as_str));
            codes.push(run(&args).status.code().unwrap());
        }
        let expected = if e.injective() { 0 } else { 1 };
        assert_eq!(codes, vec![expected; 3], "{}", e.name);
    }
}

#[test]
fn auxiliary_iterates() {
    let (code, v) = run_json(&["aux-iterate", "x1", "x2 - x1*x2*x1", "-k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["auxiliary"], json!(["x1", "x2 + x1*z2*z1"]));
    assert_eq!(v["iterates"][1]["head"], json!(["x1", "x2 + x1*x2*x1"]));
    assert_eq!(v["iterates"][1]["dz"], "5");
}

#[test]
fn catalan_system() {
    let (code, v) = run_json(&["solve-system", "-g", "1", "x1 + z1*z1", "--trunc", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["solution"], json!(["x1 + x1^2 + 2*x1^3 + 5*x1^4 + 14*x1^5"]));
    assert_eq!(run(&["solve-system", "z1 + x1"]).status.code(), Some(2));
}

#[test]
fn derivative_and_scion() {
    let (_, v) = run_json(&["derive", "x1*x2 - x2*x1"]);
    assert_eq!(v, json!(["x1*y2 - x2*y1 + y1*x2 - y2*x1"]));
    let (_, v) = run_json(&["scion", "x1", "x2 - x1^2"]);
    assert_eq!(v, json!(["x1", "x2 - x1*y1 - y1*x1", "y1", "y2"]));
}

#[test]
fn hypo_jacobian_round_trips() {
    let (code, v) = run_json(&["hypojac", "x1", "x2 - x1*x2*x1"]);
    assert_eq!(code, 0);
    for row in v.as_array().unwrap() {
        for e in row.as_array().unwrap() {
            let s = e.as_str().unwrap();
            assert_eq!(parse_bipartite(s).unwrap().to_string(), s);
        }
    }
    assert_eq!(v[0][1], "-1 (x) y2*y1 - y2*y1 (x) 1");
}

#[test]
fn evaluation_and_tuple_round_trip() {
    let tuple = r#"[[["1/2","2"],["0","1+2 i"]],[["0","-1"],["1","0"]]]"#;
    let (code, v) = run_json(&["eval", "x1", "x2", "--at", tuple]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::from_str::<Value>(tuple).unwrap());
    let (_, v) = run_json(&["eval", "x1 + x1^2 + x2*x1", "x2 - x1^2 - x2*x1", "--at", r#"[[["-1/2"]],[["-1/2"]]]"#]);
    assert_eq!(v, json!([[["0"]], [["-1"]]]));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "-p", "x1", "x2 - x1^2", "-q", "x1", "x2 + x1^2"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "-p", "x1", "x2 - x1^2", "-q", "x1", "x2"]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let out = run(&["invert", "-g", "2", "x1", "x2 - x3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("x3"));
    let out = run(&["invert", "x1", "x2 - *x1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("1:6"));
    assert_eq!(run(&["check-injective", "--method", "newton", "x1"]).status.code(), Some(2));
    assert_eq!(run(&["invert", "-g", "3", "x1", "x2"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["invert", "--seed", "7", "x1 + x1^2 + x2*x1", "x2 - x1^2 - x2*x1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let path = std::env::temp_dir().join(format!("freeinv-out-{}.json", std::process::id()));
    let path_s = path.to_str().unwrap();
    let out = run(&["--json", "--out", path_s, "invert", "x1", "x2 - x1^2"]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["q"], json!(["x1", "x2 + x1^2"]));
    std::fs::remove_file(path).ok();
}
