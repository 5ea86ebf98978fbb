use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squeezelab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn csv_body(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().filter(|l| !l.starts_with('#')).map(String::from).collect()
}

#[test]
fn check_hext_kn_margin() {
    let out = run(&["check-hext", "--domain", "kn"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let delta = v["result"]["margin"]["delta"].as_f64().unwrap();
    assert!((delta - 1.0 / 16.0).abs() < 1e-3, "{delta}");
    assert_eq!(v["catalog_hash"].as_str().unwrap(), squeezelab::specfile::catalog_hash());
    assert_eq!(v["config"]["domain"], "kn");
}

#[test]
fn reproduce_kn_limit() {
    let out = run(&["reproduce", "ex-5-2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let checks = v["result"][0]["checks"].as_array().unwrap();
    let coeff = checks.iter().find(|c| c["constant"] == "limit coefficient").unwrap();
    let computed: f64 = coeff["computed"].as_str().unwrap().parse().unwrap();
    assert!((computed - 31.0).abs() <= 1e-3);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn classify_sequence_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prop41.json");
    let file = squeezelab::sequences::catalog_sequence("prop-4-1").unwrap().to_file();
    std::fs::write(&path, serde_json::to_vec(&file).unwrap()).unwrap();
    let out = run(&["classify", "--domain", "e124", "--seq", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["mode"], "lambda-tangential-nonuniform");
}

#[test]
fn squeeze_csv_columns_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(&["squeeze", "--seq", "ex-4-1", "--js", "16:64:geom", "--directions", "200", "--format", "csv", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "j,eps,tau_1,tau_2,r_inner,r_outer,lower_bound,directions,wall_time");
    assert_eq!(body.len(), 4);
    assert!(text.contains("# catalog_hash: "));
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "temporary files left behind: {names:?}");
}

#[test]
fn converge_csv_columns() {
    let out = run(&["converge", "--seq", "ex-5-2", "--grid-n", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let body = csv_body(&out);
    assert_eq!(body[0], "j,sup_dev,fitted_order");
    assert_eq!(body.len(), 11);
}

#[test]
fn exit_codes_are_distinct() {
    assert_eq!(run(&["classify", "--seq", "ex-5-2", "--tol", "0.5"]).status.code(), Some(1));
    assert_eq!(run(&["check-hext", "--domain", "no-such-domain"]).status.code(), Some(1));
    assert_eq!(run(&["check-hext", "--domain", "kn-tilde"]).status.code(), Some(2));
    assert_eq!(run(&["squeeze", "--seq", "prop-4-1", "--pipeline", "h-extendible"]).status.code(), Some(2));
    assert_eq!(run(&["scale", "--seq", "prop-4-1", "--pipeline", "h-extendible"]).status.code(), Some(3));
    assert_eq!(run(&["squeeze", "--bogus"]).status.code(), Some(64));
    let out = run(&["check-hext", "--domain", "kn", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["exit_code"], 4);
}

#[test]
fn out_path_receives_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hext.json");
    let out = run(&["check-hext", "--domain", "e123", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(Path::new(&path)).unwrap()).unwrap();
    assert!(v["result"]["margin"]["delta"].as_f64().unwrap() >= 1.0 - 1e-6);
}
