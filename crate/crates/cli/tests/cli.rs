//! End-to-end runs of the binary: flags, exit codes, artifact formats,
//! determinism, and cache behavior.

use std::path::Path;
use std::process::{Command, Output};

fn bcm(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcm"))
        .env("BCM_CACHE_DIR", cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn motzkin_sequence_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = bcm(
        dir.path(),
        &["compute-motzkin", "--genus", "0", "--vertices", "1", "--max-total", "8", "--b", "1", "--c", "1"],
    );
    assert!(out.status.success());
    let values: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|line| line.rsplit(',').next().unwrap().to_string())
        .collect();
    assert_eq!(values, ["1", "1", "2", "4", "9", "21", "51", "127", "323"]);
}

#[test]
fn catalan_single_profile() {
    let dir = tempfile::tempdir().unwrap();
    let out = bcm(
        dir.path(),
        &["compute-catalan", "--genus", "1", "--vertices", "1", "--degrees", "4"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("1,1,4,1"));
}

#[test]
fn compute_f_json_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let one = bcm(dir.path(), &["compute-F", "--genus", "1", "--vertices", "1"]);
    assert!(one.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(parsed["vars"], serde_json::json!(["t1"]));
    // Warm-cache rerun is byte-identical.
    let two = bcm(dir.path(), &["compute-F", "--genus", "1", "--vertices", "1"]);
    assert_eq!(one.stdout, two.stdout);
    // And a cold run from scratch matches too.
    let cold_dir = tempfile::tempdir().unwrap();
    let cold = bcm(cold_dir.path(), &["compute-F", "--genus", "1", "--vertices", "1"]);
    assert_eq!(one.stdout, cold.stdout);
}

#[test]
fn compute_w_both_routes_match() {
    let dir = tempfile::tempdir().unwrap();
    let out = bcm(
        dir.path(),
        &["compute-W", "--genus", "0", "--vertices", "3", "--method", "both"],
    );
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["match"], serde_json::json!(true));
    assert_eq!(parsed["dF"]["terms"], parsed["residue"]["terms"]);
}

#[test]
fn verify_identities_report() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = bcm(
        dir.path(),
        &["verify", "--suite", "identities", "--output", report_path.to_str().unwrap()],
    );
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["suite"], serde_json::json!("identities"));
    assert_eq!(report["version"], serde_json::json!(1));
    for check in report["checks"].as_array().unwrap() {
        assert_eq!(check["status"], serde_json::json!("pass"));
    }
}

#[test]
fn verify_bridge_with_weights() {
    let dir = tempfile::tempdir().unwrap();
    let out = bcm(
        dir.path(),
        &["verify", "--suite", "bridge", "--b", "1/2", "--c", "1", "--max-total", "6"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.iter().any(|n| n.contains("bridge-stable-1-1[b=1/2,c=1]")));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    // Unknown flag.
    let out = bcm(dir.path(), &["compute-catalan", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // Mutually required flags missing.
    let out = bcm(dir.path(), &["compute-catalan", "--genus", "0", "--vertices", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // Degree count mismatch.
    let out = bcm(
        dir.path(),
        &["compute-catalan", "--genus", "0", "--vertices", "2", "--degrees", "4"],
    );
    assert_eq!(out.status.code(), Some(2));
    // Rational with nonpositive denominator.
    let out = bcm(
        dir.path(),
        &["compute-motzkin", "--genus", "0", "--vertices", "1", "--max-total", "2", "--b", "1/-2", "--c", "1"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn warm_cache_reuses_w_entries() {
    let dir = tempfile::tempdir().unwrap();
    let first = bcm(
        dir.path(),
        &["compute-W", "--genus", "1", "--vertices", "1", "--method", "residue"],
    );
    assert!(first.status.success());
    assert!(dir.path().join("W_g1_v1.json").exists());
    let second = bcm(
        dir.path(),
        &["compute-W", "--genus", "1", "--vertices", "1", "--method", "residue"],
    );
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_all_fans_out_with_jobs() {
    // A cheap parallelism smoke test: the identities suite with jobs > 1.
    let dir = tempfile::tempdir().unwrap();
    let out = bcm(dir.path(), &["verify", "--suite", "identities", "--jobs", "2"]);
    assert!(out.status.success());
}
