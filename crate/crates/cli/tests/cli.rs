use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qflab")).args(args).env_remove("QFLAB_NMAX").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_chain_algebra_satisfies_jacobi() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a.json");
    let o = qflab(&["gen", "Lnr", "--n", "9", "--r", "5", "-o", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let o = qflab(&["jacobi", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["valid"], Value::Bool(true));
    assert_eq!(v["residuals"].as_array().unwrap().len(), 0);
}

#[test]
fn sum_with_a_line_has_rank_three() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.json");
    assert_eq!(qflab(&["gen", "LsumC", "--n", "9", "-o", path_str(&file)]).status.code(), Some(0));
    let o = qflab(&["rank", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn parameter_elimination_reaches_q6() {
    let o = qflab(&["iso-cn", "--n", "6", "--alpha", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "EQUAL Q_6");
    assert!(!v["stages"].as_array().unwrap().is_empty());
    assert_eq!(v["total"].as_array().unwrap().len(), 6);
    let o = qflab(&["iso-cn", "--n", "10", "--alpha", "-1/3,2,5/7"]);
    assert_eq!(json(&o)["verdict"], "EQUAL Q_10");
}

#[test]
fn documents_round_trip_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    let o = qflab(&["gen", "Ank", "--n", "8", "--k", "3"]);
    std::fs::write(&file, stdout(&o)).unwrap();
    let v = json(&o);
    assert_eq!(v["metadata"], "Ank(n=8,k=3)");
    assert_eq!(v["params"], serde_json::json!(["alpha1", "alpha2"]));
    let again = qflab(&["jacobi", path_str(&file)]);
    assert_eq!(again.status.code(), Some(0));
}

#[test]
fn graded_algebra_of_a_deformation_is_its_class() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d.json");
    let graded = dir.path().join("gr.json");
    qflab(&["gen", "AsumC", "--n", "9", "--k", "2", "--alpha", "1,2", "-o", path_str(&file)]);
    assert_eq!(qflab(&["gr", path_str(&file), "-o", path_str(&graded)]).status.code(), Some(0));
    let o = qflab(&["classify", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["gr_class"], "LsumC(n=9)");
    let o = qflab(&["series", path_str(&graded)]);
    let v = json(&o);
    assert_eq!(v["quasi_filiform"], Value::Bool(true));
    assert_eq!(v["type"], serde_json::json!([3, 1, 1, 1, 1, 1, 1]));
}

#[test]
fn derivations_report_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("e.json");
    qflab(&["gen", "L", "--n", "5", "-o", path_str(&file)]);
    let v = json(&qflab(&["derivations", path_str(&file)]));
    assert_eq!(v["diagonal"]["dim"], 2);
    let dim = v["dim"].as_u64().unwrap() as usize;
    assert_eq!(v["basis"].as_array().unwrap().len(), dim);
    assert!(v["basis"][0][0][0].is_string());
}

#[test]
fn weight_audit_exit_codes() {
    let ok = qflab(&["weights", "BsumC", "--n", "9", "--k", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["passed"], Value::Bool(true));
    let bad = qflab(&["weights", "BsumC", "--n", "9", "--k", "2", "--printed"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!json(&bad)["violations"].as_array().unwrap().is_empty());
}

#[test]
fn constraints_of_a_parametric_family() {
    let o = qflab(&["constraints", "Gnk", "--n", "9", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(!v["generators"].as_array().unwrap().is_empty());
    assert_eq!(v["vanishes_at_origin"], Value::Bool(false));
    assert!(v["sample_point"].is_array());
}

#[test]
fn failing_jacobi_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.json");
    qflab(&["gen", "Fnrk", "--n", "9", "--r", "3", "--k", "1", "-o", path_str(&file)]);
    let o = qflab(&["jacobi", path_str(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!json(&o)["residuals"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    let o = qflab(&["gen", "Lnr", "--n", "9", "--r", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('r'));
    let o = qflab(&["gen", "Ank", "--n", "8", "--k", "2", "--alpha", "1,x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--alpha"));
    assert_eq!(qflab(&["gen", "Nope", "--n", "5"]).status.code(), Some(2));
    assert_eq!(qflab(&["jacobi", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(qflab(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    qflab(&["gen", "Ank", "--n", "8", "--k", "3", "-o", path_str(&file)]);
    let o = qflab(&["rank", path_str(&file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--alpha"));
}

#[test]
fn sweep_is_byte_identical_and_capped() {
    let args = ["sweep", "--families", "Lnr,QsumC,Cnrk", "--n-max", "10"];
    let a = qflab(&args);
    let b = qflab(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let capped = Command::new(env!("CARGO_BIN_EXE_qflab")).args(args).env("QFLAB_NMAX", "8").output().unwrap();
    assert_eq!(json(&capped)["n_max"], 8);
}
