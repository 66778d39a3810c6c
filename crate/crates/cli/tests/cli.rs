use std::process::{Command, Output};

use serde_json::Value;

fn auxz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_auxz"))
        .args(args)
        .env_remove("AUXZ_PREC_BITS")
        .output()
        .expect("spawn auxz")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn rect32_at_2707_passes() {
    let out = auxz(&["check", "--tag", "rect32", "--t", "2707"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["total"], 1);
    assert_eq!(v["records"][0]["pass"], true);
    assert_eq!(v["config"]["axes"]["t"], "2707");
}

#[test]
fn rect32_at_2700_fails_with_status_two() {
    let out = auxz(&["check", "--tag", "rect32", "--t", "2700"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["summary"]["failed"], 1);
}

#[test]
fn solve_threshold_reports_tau0() {
    let out = auxz(&["solve-threshold", "--prec-bits", "256"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["tau0"].as_str().unwrap().starts_with("6.2407203249044865166362806380787932493922312009"));
    assert_eq!(v["digits_verified"], 48);
    assert!(v["t0"].as_str().unwrap().starts_with("3.9211"));
    let literal = auxz(&["solve-threshold", "--log-arg", "t"]);
    assert!(json(&literal)["tau0"].as_str().unwrap().starts_with("7.3205635431688"));
}

#[test]
fn low_precision_threshold_is_an_error() {
    let out = auxz(&["solve-threshold", "--prec-bits", "128"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["frobnicate"][..],
        &["check", "--tag", "nope"],
        &["check", "--tag", "rect32", "--sigma", "1"],
        &["check", "--tag", "lemma1", "--sigma", "0.5:2:4"],
        &["check", "--tag", "rzeta", "--t", "1:0:3"],
        &["eval-r", "--sigma", "1", "--t", "20", "--prec-bits", "32"],
        &["scan-zeros", "--t-min", "0", "--t-max", "1e5"],
    ] {
        let out = auxz(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(auxz(&["--help"]).status.code(), Some(0));
    assert_eq!(auxz(&["--version"]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["check", "--tag", "rzeta", "--sigma", "0.5,1.5", "--t", "30,60"];
    let a = auxz(&args);
    let b = auxz(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let timed = auxz(&["check", "--tag", "rect32", "--timing"]);
    assert!(json(&timed)["wall_time_s"].is_number());
    assert!(json(&auxz(&["check", "--tag", "rect32"])).get("wall_time_s").is_none());
}

#[test]
fn records_sorted_by_height_then_sigma() {
    let v = json(&auxz(&["check", "--tag", "lemma1", "--sigma", "2,1.5", "--t", "100,10"]));
    let keys: Vec<(f64, f64)> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["t"].as_f64().unwrap(), r["sigma"].as_f64().unwrap()))
        .collect();
    assert_eq!(keys, vec![(10.0, 1.5), (10.0, 2.0), (100.0, 1.5), (100.0, 2.0)]);
}

#[test]
fn csv_columns() {
    let out = auxz(&["--format", "csv", "check", "--tag", "domination", "--sigma", "1", "--tau", "100,1e8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tag,sigma,t,tau,lhs,rhs,margin,pass"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "domination");
    assert_eq!(row[2], "");
    assert_eq!(row[7], "true");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn precision_from_environment_and_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_auxz"))
        .args(["eval-zeta", "--sigma", "2", "--t", "0"])
        .env("AUXZ_PREC_BITS", "96")
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["config"]["prec_bits"], 96);
    assert!(v["re"].as_str().unwrap().starts_with("1.6449340668482264364"));
    let out = Command::new(env!("CARGO_BIN_EXE_auxz"))
        .args(["eval-zeta", "--sigma", "2", "--t", "0", "--prec-bits", "200"])
        .env("AUXZ_PREC_BITS", "96")
        .output()
        .unwrap();
    assert_eq!(json(&out)["config"]["prec_bits"], 200);
}

#[test]
fn evaluations() {
    let v = json(&auxz(&["eval-r", "--sigma", "2", "--t", "10"]));
    assert!(v["re"].as_str().unwrap().starts_with("8.5083885711309736776"));
    assert!(v["im"].as_str().unwrap().starts_with("1.2303165700906802705"));
    let w = json(&auxz(&["eval-r", "--sigma", "2", "--t", "10", "--crossing-n", "2"]));
    assert_eq!(v["re"].as_str().unwrap()[..30], w["re"].as_str().unwrap()[..30]);
    let s = json(&auxz(&["zeta-sum", "--x", "3.7", "--sigma", "1", "--t", "0"]));
    assert!(s["re"].as_str().unwrap().starts_with("1.83333333333333333"));
}

#[test]
fn scan_without_zeros_writes_file() {
    let dir = std::env::temp_dir().join(format!("auxz-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.json");
    let out = auxz(&[
        "scan-zeros",
        "--sigma-min",
        "1.5",
        "--sigma-max",
        "2",
        "--t-min",
        "2707",
        "--t-max",
        "2727",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["argument_principle_count"], 0);
    assert_eq!(v["zeros"].as_array().unwrap().len(), 0);
    assert_eq!(v["census_matches"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_locates_a_zero() {
    let out = auxz(&["scan-zeros", "--sigma-min", "0", "--sigma-max", "1", "--t-min", "76", "--t-max", "78"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["census"], 1);
    assert_eq!(v["conjecture_holds"], true);
    let beta = v["zeros"][0]["beta"].as_f64().unwrap();
    assert!((beta - 0.8606419097008).abs() < 1e-9);
}
