use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn heptalift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heptalift")).args(args).env("HEPTALIFT_THREADS", "2").output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_heptalift"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn json_err(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

const DIAG_112: &str = r#"{"diag":[1,1,2],"x":[0,0,0,0,0,0,0,0],"y":[0,0,0,0,0,0,0,0],"z":[0,0,0,0,0,0,0,0]}"#;

#[test]
fn gamma_k_value() {
    let v = json_out(&heptalift(&["gamma-k", "--k", "10", "--derived"]));
    assert_eq!(v["gamma_k"], "1484926469018365732734375/302231454903657293676544");
    assert_eq!(v["derived"], v["gamma_k"]);
    assert_eq!(v["pi_power"], -63);
}

#[test]
fn density_of_2_adic_type() {
    let v = json_out(&heptalift(&["density", "--prime", "2", "--divisors", "0,0,1"]));
    assert_eq!(v["beta"], "722925/524288");
    assert_eq!(v["divisors"], serde_json::json!([0, 0, 1]));
}

#[test]
fn reduce_from_stdin() {
    let v = json_out(&with_stdin(&["reduce", "--prime", "2", "--input", "-"], DIAG_112));
    assert_eq!(v["divisors"], serde_json::json!([0, 0, 1]));
    let g = json_out(&with_stdin(&["reduce", "--input", "-"], DIAG_112));
    assert_eq!(g["det"], "2");
}

#[test]
fn malformed_input_is_usage_error() {
    let o = with_stdin(&["reduce", "--prime", "2", "--input", "-"], "{\"diag\": [1, 2]");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_err(&o)["error"], "usage");
}

#[test]
fn bad_arguments_are_usage_errors() {
    for args in [
        &["frobnicate"][..],
        &["density", "--prime", "4", "--divisors", "0,0,1"],
        &["density", "--prime", "2", "--divisors", "0,1"],
        &["siegel", "--prime", "3", "--m", "0,2,1"],
        &["period", "--k", "10", "--digits", "0"],
        &["lift-coeff", "--k", "11", "--input", "/nonexistent.json"],
    ] {
        let o = heptalift(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(json_err(&o)["message"].is_string());
    }
}

#[test]
fn siegel_and_evaluation() {
    let v = json_out(&heptalift(&["siegel", "--prime", "3", "--m", "1,0,2", "--eval", "X=1"]));
    let coeffs: Vec<String> = serde_json::from_value(v["coeffs"].clone()).unwrap();
    let n = coeffs.len();
    assert!((0..n).all(|i| coeffs[i] == coeffs[n - 1 - i]));
    let total: i64 = coeffs.iter().map(|c| c.parse::<i64>().unwrap()).sum();
    assert_eq!(v["eval"]["value"], format!("{total}/1"));
}

#[test]
fn lift_coefficient_is_tau() {
    let o = with_stdin(&["lift-coeff", "--k", "10", "--eigen", "tau", "--input", "-"], DIAG_112);
    assert_eq!(json_out(&o)["coefficient"], "-24");
}

#[test]
fn lift_table_with_csv_eigenvalues() {
    let dir = std::env::temp_dir().join(format!("heptalift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("delta.csv");
    std::fs::write(&csv, "p,a_p\n2,-24\n3,252\n5,4830\n").unwrap();
    let from_csv =
        json_out(&heptalift(&["lift-table", "--k", "10", "--max-det", "5", "--eigen", csv.to_str().unwrap()]));
    let builtin = json_out(&heptalift(&["lift-table", "--k", "10", "--max-det", "5"]));
    assert_eq!(from_csv, builtin);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verifiers_succeed() {
    assert_eq!(json_out(&heptalift(&["igusa-verify", "--prime", "3", "--order", "5"]))["ok"], true);
    assert_eq!(json_out(&heptalift(&["hp-verify", "--prime", "2", "--tmax", "6", "--sixty-four"]))["ok"], true);
    assert_eq!(json_out(&heptalift(&["rs-euler", "--prime", "5"]))["euler_shape_check"], true);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("heptalift-out-{}.json", std::process::id()));
    let o = heptalift(&["gamma-k", "--k", "12", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, heptalift(&["gamma-k", "--k", "12"]).stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn output_is_deterministic() {
    let a = heptalift(&["period", "--k", "10", "--digits", "15", "--threads", "1"]);
    let b = heptalift(&["period", "--k", "10", "--digits", "15", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json_out(&a);
    assert!(v["value"].as_str().unwrap().starts_with("1.44645305433419"));
}

#[test]
fn selftest_single_criterion() {
    let v = json_out(&heptalift(&["selftest", "--only", "6"]));
    assert_eq!(v["passed"], 1);
    assert_eq!(heptalift(&["selftest", "--only", "99"]).status.code(), Some(2));
}
