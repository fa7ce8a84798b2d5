use std::process::{Command, Output};

use mockq_core::{mocktheta, QSeries, GRID};
use serde_json::Value;

fn mockq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mockq")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn verify_json_passes() {
    let o = mockq(&["verify", "--id", "NEWOMEGA", "--order", "300", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["status"], "pass");
    assert_eq!(arr[0]["order"], 300);
}

#[test]
fn unknown_id_is_a_usage_error() {
    let o = mockq(&["verify", "--id", "NO_SUCH"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("NEWOMEGA") && err.contains("FIDWAT"), "{err}");
}

#[test]
fn malformed_flags_exit_2() {
    assert_eq!(code(&mockq(&["verify", "--id", "FIDWAT", "--order", "2.5"])), 2);
    assert_eq!(code(&mockq(&["verify", "--id", "FIDWAT", "--order", "0"])), 2);
    assert_eq!(code(&mockq(&["numeric", "--check", "nope"])), 2);
    assert_eq!(code(&mockq(&["numeric", "--check", "etatrans", "--tau", "0.1-1i"])), 2);
    assert_eq!(code(&mockq(&["numeric", "--check", "etatrans", "--tau", "abc"])), 2);
    assert_eq!(code(&mockq(&["coeffs", "--series", "chi", "--order", "5"])), 2);
    assert_eq!(code(&mockq(&["frobnicate"])), 2);
}

#[test]
fn numeric_check_at_a_point() {
    let o = mockq(&["numeric", "--check", "s-transform", "--tau", "0.25+1i", "--tol", "1e-8"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("s-transform"));
}

#[test]
fn numeric_failure_exits_1_and_still_reports() {
    let o = mockq(&["numeric", "--check", "s-transform", "--tau", "0.25+1i", "--tol", "1e-30", "--json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["passed"], false);
    assert!(v[0]["residual"].as_f64().unwrap() > 0.0);
}

#[test]
fn numeric_battery_covers_five_scenes() {
    let o = mockq(&["numeric", "--check", "watson-lemma", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert!(v[1]["detail"].as_str().unwrap().contains("(j2, -j1, j3)"));
}

#[test]
fn coeff_dump_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    let o = mockq(&["coeffs", "--series", "f", "--order", "40", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 40 * GRID as usize);
    let parsed = QSeries::parse_dump(&text).unwrap();
    assert_eq!(parsed, mocktheta::f_eulerian(40 * GRID));
}

#[test]
fn nonzero_dump_skips_zeros() {
    let o = mockq(&["coeffs", "--series", "omega", "--order", "6", "--nonzero"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    // ω(q) = 1 + 2q + 3q² + 4q³ + 6q⁴ + 8q⁵ + …
    let leading: Vec<&str> = text.lines().map(|l| l.split('\t').nth(1).unwrap().split(' ').next().unwrap()).collect();
    assert_eq!(leading, ["1/1", "2/1", "3/1", "4/1", "6/1", "8/1"]);
}

#[test]
fn verify_all_is_sorted_with_bounded_jobs() {
    let o = mockq(&["verify-all", "--order", "20", "--json", "--jobs", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.len() >= 20);
}

#[test]
fn list_mentions_everything() {
    let o = mockq(&["list", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["identities"].as_array().unwrap().iter().any(|r| r["id"] == "NEWF"));
    assert_eq!(v["checks"].as_array().unwrap().len(), 21);
    assert!(v["series"].as_array().unwrap().iter().any(|s| s == "omega"));
}
