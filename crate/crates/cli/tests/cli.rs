use std::process::{Command, Output};

use serde_json::Value;

fn wtool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wtool"))
        .args(args)
        .output()
        .expect("run wtool")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stderr)))
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn xs(v: &Value) -> Vec<f64> {
    v["solutions"].as_array().unwrap().iter().map(|s| num(&s["x"])).collect()
}

#[test]
fn w_prints_seventeen_digits() {
    let o = wtool(&["w", "--branch", "0", "--z", "2.718281828459045"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert!(text.contains("\"w\":1.0000000000000000e+0"), "{text}");
    let v = stdout_json(&o);
    assert!(num(&v["residual"]) < 1e-15);
    assert!(v["iterations"].as_u64().is_some());
}

#[test]
fn w_secondary_and_base() {
    let v = stdout_json(&wtool(&["w", "--branch", "-1", "--z", "-0.1"]));
    assert!((num(&v["w"]) + 3.577_152_063_957_297).abs() < 1e-14);
    let v = stdout_json(&wtool(&["w", "--branch", "0", "--z", "500", "--base", "10"]));
    assert!((num(&v["w"]) - 2.331_360_559_299_078_5).abs() < 1e-14);
}

#[test]
fn w_domain_error_exits_3() {
    let o = wtool(&["w", "--branch", "-1", "--z", "1"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
    assert_eq!(stderr_json(&o)["error"], "domain");
}

#[test]
fn solve_examples() {
    let o = wtool(&["solve", "--equation", "y = x*exp(x)", "--y", "2.718281828459045"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["family"], "P1");
    assert_eq!(xs(&v), vec![1.0]);
    assert_eq!(v["solutions"][0]["branches"], serde_json::json!([0]));

    let v = stdout_json(&wtool(&["solve", "--equation", "y = x + exp(x)", "--y", "1"]));
    assert_eq!(v["family"], "S1");
    assert!(xs(&v)[0].abs() < 1e-15);
    assert!(v["normalization_trace"].is_array());

    let v = stdout_json(&wtool(&["solve", "--equation", "W(x)+W(1/x)", "--y", "1.2043392132629213"]));
    let got = xs(&v);
    assert_eq!(got.len(), 2);
    assert!((got[0] - 0.5).abs() < 1e-12 && (got[1] - 2.0).abs() < 1e-12);
    let cases: Vec<&str> = v["solutions"].as_array().unwrap().iter().map(|s| s["case"].as_str().unwrap()).collect();
    assert!(cases.contains(&"case1") && cases.contains(&"case2"));
}

#[test]
fn solve_errors() {
    let o = wtool(&["solve", "--equation", "y = x^", "--y", "1"]);
    assert_eq!(code(&o), 2);
    let e = stderr_json(&o);
    assert_eq!(e["error"], "parse");
    assert_eq!(e["position"], 7);
    assert!(e["expected"].is_array());

    let o = wtool(&["solve", "--equation", "sin(x)", "--y", "1"]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_json(&o)["error"], "no_match");

    let o = wtool(&["solve", "--equation", "x*exp(x)", "--y", "-1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn invert_closed_form_and_erratum() {
    let o = wtool(&["invert", "--family", "P1", "--params", "a=1,b=0,c=1,d=1,f=0", "--y", "2.718281828459045"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["erratum_unresolved"], false);
    assert_eq!(xs(&v), vec![1.0]);

    let o = wtool(&["invert", "--family", "P5", "--params", "a=1,b=1", "--y", "0.58197670686932642"]);
    assert_eq!(code(&o), 5);
    let v = stdout_json(&o);
    assert_eq!(v["erratum_unresolved"], true);
    assert_eq!(v["source"]["kind"], "oracle");
    assert!(xs(&v).iter().any(|x| (x - 0.5).abs() < 1e-10));

    let o = wtool(&["invert", "--family", "S9", "--params", "a1=1,b1=1,a2=0.5,b2=2", "--y", "3"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(num(&v["params"]["a2"]), 0.5);
    assert!(!xs(&v).is_empty());
}

#[test]
fn invert_bad_input() {
    let o = wtool(&["invert", "--family", "P1", "--params", "a=1,b=0,c=0,d=1,f=0", "--y", "1"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stderr_json(&o)["error"], "invalid_param");
    let o = wtool(&["invert", "--family", "Q7", "--y", "1"]);
    assert_eq!(code(&o), 2);
    let o = wtool(&["invert", "--family", "P1", "--params", "a=1,zz=2", "--y", "1"]);
    assert_eq!(code(&o), 2);
}

#[derive(Debug, serde::Deserialize)]
struct PolarRow {
    theta: f64,
    r: f64,
    branch: Option<i32>,
}

#[derive(Debug, serde::Deserialize)]
struct RotRow {
    x: f64,
    y: f64,
    branch: Option<i32>,
}

fn csv_rows<T: serde::de::DeserializeOwned>(o: &Output, header: &[&str]) -> Vec<T> {
    let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), header);
    rd.deserialize().map(|r| r.expect("strict row")).collect()
}

#[test]
fn polar_csv() {
    let o = wtool(&["polar", "--curve", "log", "--theta-min", "0", "--theta-max", "0.3", "--steps", "3"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<PolarRow> = csv_rows(&o, &["theta", "r", "branch"]);
    assert_eq!(rows.len(), 5);
    assert_eq!((rows[0].theta, rows[0].r, rows[0].branch), (0.0, 1.0, None));
    let last = &rows[4];
    assert_eq!(last.branch, Some(-1));
    assert!((last.r - 5.784_937_298_914_428).abs() < 1e-13);

    for curve in ["exp", "w", "xexpx"] {
        let o = wtool(&["polar", "--curve", curve, "--theta-min", "1.3", "--theta-max", "1.5", "--steps", "4"]);
        assert_eq!(code(&o), 0, "{curve}");
        let rows: Vec<PolarRow> = csv_rows(&o, &["theta", "r", "branch"]);
        assert!(!rows.is_empty(), "{curve}");
    }
}

#[test]
fn rotate_csv() {
    let o = wtool(&[
        "rotate", "--curve", "exp", "--A", "1", "--B", "1", "--phi", "0.7853981633974483", "--x-min", "-2",
        "--x-max", "0", "--steps", "9",
    ]);
    assert_eq!(code(&o), 0);
    let rows: Vec<RotRow> = csv_rows(&o, &["x", "y", "branch"]);
    assert!(!rows.is_empty());
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for r in &rows {
        assert!(matches!(r.branch, Some(0 | -1)));
        // Rotate back clockwise and check the point is on y = e^x.
        let (u, v) = (r.x * s + r.y * s, -r.x * s + r.y * s);
        assert!((v - u.exp()).abs() <= 1e-9 * v.abs().max(1.0), "{r:?}");
    }

    let o = wtool(&[
        "rotate", "--curve", "exp", "--A", "1", "--B", "1", "--phi", "-1.5707963267948966", "--x-min", "0.5",
        "--x-max", "2", "--steps", "4",
    ]);
    assert_eq!(code(&o), 0);
    let rows: Vec<RotRow> = csv_rows(&o, &["x", "y", "branch"]);
    assert_eq!(rows.len(), 4);
    for r in &rows {
        assert_eq!(r.branch, None);
        assert!((r.y + r.x.ln()).abs() < 1e-15);
    }

    let o = wtool(&[
        "rotate", "--curve", "log", "--A", "1", "--B", "1", "--phi", "1.5707963267948966", "--x-min", "0",
        "--x-max", "1", "--steps", "2",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn validate_reports_unresolved_families() {
    let o = wtool(&["validate"]);
    assert_eq!(code(&o), 5);
    let v = stdout_json(&o);
    assert_eq!(v["families_unresolved"], true);
    let recs = v["records"].as_array().unwrap();
    let unresolved: Vec<&str> = recs
        .iter()
        .filter(|r| r["status"] == "ERRATUM_UNRESOLVED")
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(unresolved, ["P4", "P5", "P6", "P11", "S4", "S6"]);
    assert!(recs.iter().any(|r| r["id"] == "CTP1"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&wtool(&["w", "--branch", "3", "--z", "1"])), 2);
    assert_eq!(code(&wtool(&["nonsense"])), 2);
}
