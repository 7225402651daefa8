use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_seshadri"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("seshadri-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout should be JSON")
}

#[test]
fn analyze_square_lattice() {
    let input = scratch("square.json", r#"{"g": 1, "re": [[0.0]], "im": [[1.0]]}"#);
    let out = bin().args(["analyze", "--input"]).arg(&input).output().unwrap();
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["svp"]["value"], 1.0);
    assert_eq!(v["bounds"]["effective_lower"], 1.0);
    assert_eq!(v["bounds"]["consistency_flags"], Value::Array(vec![]));
}

#[test]
fn svp_exact_input_reports_rational_value() {
    let input = scratch("exact.json", r#"{"g": 1, "re": [["1/2"]], "im": [["1"]]}"#);
    let out = bin().args(["svp", "--oracle", "--input"]).arg(&input).output().unwrap();
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["method"], "brute-force");
    assert_eq!(v["exact_value"], "1");
}

#[test]
fn svp_box_too_small_is_an_error() {
    // Im tau is the A_6 Cartan matrix: minimum 6/7 on the dual side against a
    // smallest eigenvalue 2 - 2 cos(pi/7), so the certified radius is 2
    let n = 6usize;
    let row = |f: &dyn Fn(usize, usize) -> f64| -> String {
        let rows: Vec<String> = (0..n)
            .map(|i| format!("[{}]", (0..n).map(|j| f(i, j).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    };
    let re = row(&|_, _| 0.0);
    let im = row(&|i, j| if i == j { 2.0 } else if i.abs_diff(j) == 1 { -1.0 } else { 0.0 });
    let input = scratch("box.json", &format!(r#"{{"g": {n}, "re": {re}, "im": {im}}}"#));
    let out = bin().args(["svp", "--oracle", "--box", "1", "--input"]).arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("box"));
}

#[test]
fn bounds_and_surface() {
    let out = bin().args(["bounds", "--genus", "2", "--gonality", "2", "--jacobian"]).output().unwrap();
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["gonality_upper_exact"], "4/3");
    assert!(v["bs2_jacobian_upper"].as_f64().unwrap() < v["gonality_period_upper"].as_f64().unwrap());

    let out = bin().args(["surface", "--genus", "3", "--gonality", "2"]).output().unwrap();
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["sigma_degree"], "12");
    assert_eq!(v["gonality_threshold"], "3/2");
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("seshadri-cli-out-{}.json", std::process::id()));
    let out = bin().args(["surface", "--genus", "4", "--output"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["sigma_degree"], "24");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn blowup_reports_every_region() {
    let out = bin().args(["blowup", "--samples", "200", "--seed", "3"]).output().unwrap();
    assert!(out.status.success());
    let v = json(&out);
    let regions: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["region"].as_str().unwrap()).collect();
    for tag in ["outer", "inner", "positivity", "normalization", "hopf"] {
        assert!(regions.contains(&tag), "missing {tag}");
    }
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn failed_checks_give_nonzero_exit() {
    // finite differences cannot reach 1e-12 near the origin
    let out = bin()
        .args(["blowup", "--samples", "200", "--tol", "1e-12", "--mode", "fd"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_is_reproducible() {
    let run = || bin().args(["search", "--genus", "1", "--iters", "500", "--seed", "5"]).output().unwrap();
    let a = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, run().stdout);
    assert!(json(&a)["ratio"].as_f64().unwrap() > 1.0);
}

#[test]
fn invalid_input_is_rejected() {
    let input = scratch("bad.json", r#"{"g": 1, "re": [[0.0]], "im": [[-1.0]]}"#);
    let out = bin().args(["analyze", "--input"]).arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("positive definite"));
}
