use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn scid(args: &[&str]) -> Output {
    run(args, None)
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_scid"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "0")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn construct_args(extra: &[&'static str]) -> Vec<&'static str> {
    let mut a = vec!["construct"];
    a.extend_from_slice(extra);
    a
}

#[test]
fn construct_max_matches_golden() {
    let o = scid(&construct_args(&["--kind", "max", "--n", "3", "--k", "2", "--t", "1", "--q", "2"]));
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("construct_max_n3_k2_t1_q2.json"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["sum"], 6);
    let members = &v["family"]["members"];
    assert_eq!(members[0]["basis"], serde_json::json!([[1, 0, 0], [0, 1, 0]]));
    assert_eq!(members[1]["basis"], serde_json::json!([[1, 0, 0], [0, 0, 1]]));
    assert_eq!(members[2]["basis"], serde_json::json!([[0, 1, 0], [0, 0, 1]]));
}

#[test]
fn construct_sunflower_matches_golden() {
    let o = scid(&construct_args(&["--kind", "sunflower", "--n", "3", "--k", "2", "--t", "1", "--q", "2", "--eta", "1"]));
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("construct_sunflower_n3_k2_t1_q2_eta1.json"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["sum"], 4);
}

#[test]
fn construct_out_of_regime_exits_2() {
    let o = scid(&construct_args(&["--kind", "max", "--n", "4", "--k", "2", "--t", "1", "--q", "2"]));
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("(n-1)(k-t) <= k fails"));
}

#[test]
fn construct_check_flag() {
    let o = scid(&construct_args(&["--kind", "spectrum2", "--n", "4", "--k", "3", "--t", "2", "--q", "3", "--eta", "3", "--eps", "1", "--check"]));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["sum"], 10);
}

#[test]
fn bad_q_and_bad_kind_exit_2() {
    assert_eq!(scid(&construct_args(&["--kind", "max", "--n", "3", "--k", "2", "--t", "1", "--q", "6"])).status.code(), Some(2));
    assert_eq!(scid(&construct_args(&["--kind", "other", "--n", "3", "--k", "2", "--t", "1", "--q", "2"])).status.code(), Some(2));
    assert_eq!(scid(&["bounds", "--n", "3", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn verify_round_trip_from_file_and_stdin() {
    let cert = golden("construct_sunflower_n3_k2_t1_q2_eta1.json");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    std::fs::write(&path, &cert).unwrap();
    let o = scid(&["verify", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["verify", "--json"], Some(&cert));
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn verify_detects_flipped_entry() {
    let mut v: Value = serde_json::from_str(&golden("construct_max_n3_k2_t1_q2.json")).unwrap();
    // <e1, e2> becomes <e1, e2 + e3>
    v["family"]["members"][0]["basis"][1][2] = Value::from(1);
    let o = run(&["verify", "--json"], Some(&v.to_string()));
    assert_eq!(o.status.code(), Some(1));
    let out: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out["ok"], false);
    // the report is unchanged (still a SCID with sum 6); the trace no longer matches
    assert!(!out["problems"].as_array().unwrap().is_empty());

    let mut v: Value = serde_json::from_str(&golden("construct_max_n3_k2_t1_q2.json")).unwrap();
    // <e2, e3> becomes <e1, e2 + e3>: now a sunflower with sum 4
    v["family"]["members"][2]["basis"] = serde_json::json!([[1, 0, 0], [0, 1, 1]]);
    let o = run(&["verify", "--json"], Some(&v.to_string()));
    assert_eq!(o.status.code(), Some(1));
    let out: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let paths: Vec<&str> = out["mismatches"].as_array().unwrap().iter().map(|m| m["path"].as_str().unwrap()).collect();
    assert!(paths.contains(&"report.sum"), "{paths:?}");
}

#[test]
fn verify_detects_non_canonical_basis() {
    let mut v: Value = serde_json::from_str(&golden("construct_max_n3_k2_t1_q2.json")).unwrap();
    v["family"]["members"][0]["basis"][0][1] = Value::from(1);
    let o = run(&["verify"], Some(&v.to_string()));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_rejects_garbage() {
    assert_eq!(run(&["verify"], Some("not json at all")).status.code(), Some(2));
    assert_eq!(run(&["verify"], Some("[1, 2, 3]")).status.code(), Some(2));
    let mut v: Value = serde_json::from_str(&golden("construct_max_n3_k2_t1_q2.json")).unwrap();
    v["family"]["members"][0]["basis"][0][0] = Value::from(7);
    assert_eq!(run(&["verify"], Some(&v.to_string())).status.code(), Some(2));
}

#[test]
fn verify_bare_family() {
    let v: Value = serde_json::from_str(&golden("construct_max_n3_k2_t1_q2.json")).unwrap();
    let o = run(&["verify"], Some(&v["family"].to_string()));
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("ok: family"));
}

#[test]
fn bounds_table_and_json() {
    let o = scid(&["bounds", "--n", "4", "--k", "2", "--t", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("bounds_n4_k2_t1.txt"));
    let o = scid(&["bounds", "--n", "5", "--k", "3", "--t", "2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["best"], 15);
    assert_eq!(v["sharp"], "no");
}

#[test]
fn spectrum_table_and_json() {
    let o = scid(&["spectrum", "--n", "3", "--k", "2", "--t", "1", "--q", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("spectrum_n3_k2_t1_q2.txt"));
    let o = scid(&["spectrum", "--n", "3", "--k", "3", "--t", "2", "--q", "2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sums: Vec<u64> = v["entries"].as_array().unwrap().iter().map(|e| e["sum"].as_u64().unwrap()).collect();
    assert_eq!(sums, vec![6, 7, 8, 9]);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| !e["realizations"].as_array().unwrap().is_empty()));
}

#[test]
fn spectrum_reports_gaps() {
    let o = scid(&["spectrum", "--n", "6", "--k", "3", "--t", "2", "--q", "2", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let gaps: Vec<&Value> = v["entries"].as_array().unwrap().iter().filter(|e| e["gap"].is_string()).collect();
    assert!(!gaps.is_empty());
}

#[test]
fn search_exhaustive_and_random() {
    let o = scid(&["search", "--n", "3", "--k", "2", "--t", "1", "--q", "2", "--d", "4", "--exhaustive"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["best_sum"], 6);
    assert_eq!(v["exhaustive"], true);

    let seq = scid(&["search", "--n", "3", "--k", "2", "--t", "1", "--q", "2", "--d", "4", "--jobs", "1"]);
    let par = scid(&["search", "--n", "3", "--k", "2", "--t", "1", "--q", "2", "--d", "4", "--jobs", "3"]);
    assert_eq!(stdout(&seq), stdout(&o));
    assert_eq!(stdout(&par), stdout(&o));

    let args = ["search", "--n", "3", "--k", "2", "--t", "1", "--q", "2", "--d", "3", "--random", "--seed", "1", "--iters", "500"];
    let a = scid(&args);
    let b = scid(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["exhaustive"], false);
}

#[test]
fn search_cap_exits_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_scid"))
        .args(["search", "--n", "3", "--k", "2", "--t", "1", "--q", "2", "--d", "4"])
        .env("SCID_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the cap"));
}
