use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mdir(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdir")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn value_at(file: &Value, n: &[u64]) -> Option<String> {
    file["values"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["n"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).eq(n.iter().copied()))
        .map(|e| e["v"].as_str().unwrap().to_string())
}

#[test]
fn invert_writes_function_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = mdir(&["invert", "--builtin", "u_star", "--k", "2", "--box", "product:30", "-o", "inv.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let file: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("inv.json")).unwrap()).unwrap();
    assert_eq!(file["box"]["mode"], "product");
    assert_eq!(value_at(&file, &[2, 2]).as_deref(), Some("-1/1"));

    let eval = mdir(
        &["eval", "--file", "inv.json", "--s", "4.5,0;4.5,0", "--T", "200", "--certify", "--C", "1", "--r", "2.4,2.4"],
        dir.path(),
    );
    assert_eq!(eval.status.code(), Some(0), "{}", String::from_utf8_lossy(&eval.stderr));
    let report = stdout_json(&eval);
    assert!(report["value"][0].as_f64().unwrap().is_finite());
    assert!(report["tail_radius"].as_f64().unwrap().is_finite());
}

#[test]
fn convolve_norm_and_add() {
    let dir = tempfile::tempdir().unwrap();
    let out = mdir(&["convolve", "--builtin", "u_star", "--builtin", "u_star", "--k", "2", "--box", "cube:8"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value_at(&stdout_json(&out), &[2, 2]).as_deref(), Some("2/1"));

    let norm = mdir(&["norm", "--builtin", "identity_I", "--k", "3"], dir.path());
    assert_eq!(String::from_utf8_lossy(&norm.stdout).trim(), "1");

    let sum = mdir(&["add", "--builtin", "u_EZ", "--builtin", "identity_I", "--k", "2", "--box", "cube:4"], dir.path());
    let file = stdout_json(&sum);
    assert_eq!(value_at(&file, &[1, 1]).as_deref(), Some("1/1"));
    assert_eq!(value_at(&file, &[1, 2]).as_deref(), Some("1/1"));
    assert_eq!(value_at(&file, &[2, 2]), None);
}

#[test]
fn divide_by_unit_and_non_unit() {
    let dir = tempfile::tempdir().unwrap();
    let out = mdir(&["divide", "--dividend", "u_star", "--divisor", "u_star", "--k", "2", "--box", "cube:6"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let file = stdout_json(&out);
    assert_eq!(file["values"].as_array().unwrap().len(), 1);
    let bad = mdir(&["divide", "--dividend", "identity_I", "--divisor", "u_EZ", "--k", "2", "--box", "cube:6"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn alpha_reports() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = stdout_json(&mdir(&["alpha", "--C", "1", "--r", "0", "--f1", "1", "--k", "2"], dir.path()));
    for a in k2["alpha"].as_array().unwrap() {
        let a = a.as_f64().unwrap();
        assert!(a > 2.3 && a < 2.4);
    }
    assert!(k2["zeta_product_upper"].as_f64().unwrap() <= 2.0);
    let k1 = stdout_json(&mdir(&["alpha", "--C", "1", "--r", "0", "--f1", "1", "--k", "1"], dir.path()));
    let a = k1["alpha"][0].as_f64().unwrap();
    assert!(a > 1.72 && a < 1.74);
    let zero = mdir(&["alpha", "--C", "1", "--r", "0", "--f1", "0", "--k", "1"], dir.path());
    assert_eq!(zero.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&zero.stderr).unwrap();
    assert_eq!(err["error"], "invalid_argument");
}

#[test]
fn eval_reports_and_gates() {
    let dir = tempfile::tempdir().unwrap();
    let out = mdir(
        &["eval", "--builtin", "u_star", "--k", "2", "--s", "2,0;2,0", "--T", "400", "--certify", "--C", "1", "--r", "0,0"],
        dir.path(),
    );
    let report = stdout_json(&out);
    assert!((report["value"][0].as_f64().unwrap() - 1.894).abs() < 0.01);
    assert!(report["tail_radius"].as_f64().unwrap() < 0.02);
    assert_eq!(report["T"], 400);

    let id = stdout_json(&mdir(&["eval", "--builtin", "identity_I", "--k", "2", "--s", "9,3;7,-2", "--T", "10", "--certify"], dir.path()));
    assert_eq!(id["value"][0].as_f64(), Some(1.0));
    assert_eq!(id["value"][1].as_f64(), Some(0.0));
    assert_eq!(id["tail_radius"].as_f64(), Some(0.0));

    let gated = mdir(&["eval", "--builtin", "u_star", "--k", "2", "--s", "2,0;2,0", "--T", "50", "--check-region", "zfr"], dir.path());
    assert_eq!(gated.status.code(), Some(3));
    let inside = mdir(&["eval", "--builtin", "u_star", "--k", "2", "--s", "2,0;2,0", "--T", "50", "--check-region", "sprime"], dir.path());
    assert_eq!(inside.status.code(), Some(0));

    let unit = mdir(&["invert", "--builtin", "u_EZ", "--k", "2", "--box", "cube:4"], dir.path());
    assert_eq!(unit.status.code(), Some(3));
    let malformed = mdir(&["eval", "--builtin", "u_star", "--k", "2", "--s", "2;2", "--T", "5"], dir.path());
    assert_eq!(malformed.status.code(), Some(2));
}

#[test]
fn region_command() {
    let dir = tempfile::tempdir().unwrap();
    let r = stdout_json(&mdir(&["region", "--s", "2,0;2,0", "--alpha", "2.335207"], dir.path()));
    assert_eq!(r["zfr2"], false);
    assert_eq!(r["abs_EZ"], true);
    assert_eq!(r["sprime"], "Inside");
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let table = mdir(&["export", "--builtin", "u_star", "--k", "2", "--box", "cube:3"], dir.path());
    let text = String::from_utf8(table.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n1,n2,value"));
    assert_eq!(text.lines().count(), 7);
    let series = stdout_json(&mdir(&["export", "--builtin", "ones", "--k", "1", "--box", "cube:6", "--format", "series"], dir.path()));
    assert_eq!(series["monomials"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_suites_and_negative_control() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["core", "series"] {
        let out = mdir(&["verify", "--suite", suite, "--seed", "7"], dir.path());
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let fixtures = dir.path().join("fixtures");
    fs::create_dir(&fixtures).unwrap();
    fs::write(fixtures.join("good.json"), r#"{"k":1,"box":{"mode":"cube","T":3},"values":[{"n":[1],"v":"1/2"}]}"#).unwrap();
    fs::write(fixtures.join("corrupt.json"), r#"{"k":1,"box":{"mode":"cube","T":3},"values":[{"n":[1],"v":"1/0"}]}"#).unwrap();
    let out = mdir(&["verify", "--suite", "core", "--seed", "7", "--fixtures", "fixtures", "--failures", "fail.csv"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let csv = fs::read_to_string(dir.path().join("fail.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.contains("corrupt.json"));
}

#[test]
fn deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.json", "b.json"] {
        let out = mdir(&["invert", "--builtin", "u_star", "--k", "3", "--box", "cube:5", "-o", name], dir.path());
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(fs::read(dir.path().join("a.json")).unwrap(), fs::read(dir.path().join("b.json")).unwrap());
    let v1 = mdir(&["verify", "--suite", "ufd", "--seed", "3"], dir.path());
    let v2 = Command::new(env!("CARGO_BIN_EXE_mdir"))
        .args(["verify", "--suite", "ufd", "--seed", "3"])
        .env("MDIR_THREADS", "1")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(v1.stdout, v2.stdout);
}
