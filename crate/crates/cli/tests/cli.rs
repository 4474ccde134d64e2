use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hsigma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsigma")).args(args).output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn write_manifest(dir: &Path, body: &str) -> String {
    let path = dir.join("manifest.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_symmetric_three() {
    let out = hsigma(&["analyze", "--group", "sym(3)", "--sigma", "finest", "--check", "thm13"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let report = &recs[0]["report"];
    assert_eq!(report["theorem"], "1.3");
    assert_eq!(report["equivalent"], true);
    let conditions = report["conditions"].as_array().unwrap();
    assert!(conditions.len() >= 3);
    assert!(conditions.iter().all(|c| c["holds"] == true));
}

#[test]
fn analyze_lemmas_on_the_order_1260_group() {
    let out = hsigma(&["analyze", "--group", "direct(frobenius(7,3,2), alt(5))", "--sigma", "{7}|rest", "--check", "lemmas"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn missing_sigma_fullness_is_a_usage_error() {
    let out = hsigma(&["analyze", "--group", "alt(5)", "--sigma", "{2,5}|rest", "--check", "thm19"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not sigma-full"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hsigma(&["analyze", "--group", "cyclic(3", "--check", "thm13"]).status.code(), Some(1));
    assert_eq!(hsigma(&["analyze", "--group", "sym(3)", "--check", "thm42"]).status.code(), Some(1));
    assert_eq!(hsigma(&["analyze", "--group", "sym(8)", "--check", "thm13"]).status.code(), Some(1));
    assert_eq!(hsigma(&["describe", "--group", "sym(3)", "--max-order", "0"]).status.code(), Some(1));
    assert_eq!(hsigma(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hsigma(&["--help"]).status.code(), Some(0));
}

#[test]
fn describe_examples() {
    let out = hsigma(&["describe", "--group", "sym(4)", "--sigma", "finest"]);
    assert_eq!(out.status.code(), Some(0));
    let d = &records(&out)[0];
    assert_eq!(d["order"], 24);
    assert_eq!(d["sigma_residual_order"], 12);
    assert_eq!(d["subgroups"], 30);

    let d = &records(&hsigma(&["describe", "--group", "cyclic(30)", "--sigma", "coarsest"]))[0];
    assert_eq!(d["sigma_primary"], true);
    assert_eq!(d["sigma_residual_order"], 1);

    let d = &records(&hsigma(&["describe", "--group", "quaternion(8)", "--sigma", "finest"]))[0];
    assert_eq!(d["dedekind"], true);
}

#[test]
fn lattice_bound_from_flag_and_environment() {
    let d = &records(&hsigma(&["describe", "--group", "sym(4)", "--lattice-bound", "10"]))[0];
    assert_eq!(d["subgroups"], Value::Null);
    let out = Command::new(env!("CARGO_BIN_EXE_hsigma"))
        .args(["describe", "--group", "sym(4)"])
        .env("SIGMA_LATTICE_BOUND", "10")
        .output()
        .unwrap();
    assert_eq!(records(&out)[0]["subgroups"], Value::Null);
}

#[test]
fn empty_manifest_gives_no_reports() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_manifest(dir.path(), "[]");
    let out = hsigma(&["sweep", "--manifest", &manifest]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn fault_fixture_exits_two_and_names_the_entry() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_manifest(
        dir.path(),
        r#"[{"name": "s3", "spec": "sym(3)", "sigma": ["finest"]},
            {"name": "s4-broken-core", "spec": "sym(4)", "sigma": ["finest"], "fault": "corrupt-normal-core"}]"#,
    );
    let out = hsigma(&["sweep", "--manifest", &manifest, "--check", "lemmas"]);
    assert_eq!(out.status.code(), Some(2));
    let failing: Vec<Value> = records(&out).into_iter().filter(|r| r["ok"] == false).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r["entry"] == "s4-broken-core"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s4-broken-core"));
}

#[test]
fn build_failures_are_counted_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_manifest(
        dir.path(),
        r#"[{"name": "broken", "spec": "cyclic(", "sigma": ["finest"]},
            {"name": "c6", "spec": "cyclic(6)", "sigma": ["finest", "coarsest"]}]"#,
    );
    let out = hsigma(&["sweep", "--manifest", &manifest, "--check", "thm13,thm17"]);
    assert_eq!(out.status.code(), Some(2));
    let recs = records(&out);
    assert_eq!(recs[0]["check"], "build");
    assert_eq!(recs.iter().filter(|r| r["entry"] == "c6").count(), 4);
    assert!(recs.iter().filter(|r| r["entry"] == "c6").all(|r| r["ok"] == true));
}

#[test]
fn table_specs_resolve_next_to_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c3.json"), r#"{"order": 3, "mul": [0,1,2, 1,2,0, 2,0,1]}"#).unwrap();
    let manifest = write_manifest(dir.path(), r#"[{"name": "t", "spec": "table(\"c3.json\")", "sigma": ["finest"]}]"#);
    let out = hsigma(&["sweep", "--manifest", &manifest, "--check", "thm13"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn parallel_and_serial_sweeps_agree() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_manifest(
        dir.path(),
        r#"[{"name": "s4", "spec": "sym(4)", "sigma": ["finest", "coarsest", "{2}|rest"]},
            {"name": "a5", "spec": "alt(5)", "sigma": ["finest", "{3}|rest", "{2,5}|rest"]},
            {"name": "d12", "spec": "dihedral(12)", "sigma": ["finest", "{3}|rest"]}]"#,
    );
    let json_path = dir.path().join("serial.ndjson");
    let serial = hsigma(&["sweep", "--manifest", &manifest, "--jobs", "1", "--json", json_path.to_str().unwrap()]);
    let parallel = hsigma(&["sweep", "--manifest", &manifest, "--jobs", "4"]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(parallel.status.code(), Some(0));
    assert_eq!(std::fs::read(&json_path).unwrap(), serial.stdout);
    let (mut a, mut b) = (records(&serial), records(&parallel));
    a.iter_mut().for_each(strip_timings);
    b.iter_mut().for_each(strip_timings);
    assert_eq!(a, b);
    assert!(a.iter().enumerate().all(|(i, r)| r["task"] == i));
}
