//! End-to-end coverage of the `nsg` binary: exit codes, JSON schema, and
//! determinism across parallelism settings.

use std::process::{Command, Output};

use serde::Deserialize;
use serde_json::Value;

fn nsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsg"))
        .args(args)
        .env_remove("NSG_PARALLELISM")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

#[test]
fn analyze_json_contains_printed_numerator() {
    let out = nsg(&["analyze", "3,5,7", "--output", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(
        v["numerator"],
        serde_json::json!([[0, 1], [10, -1], [12, -1], [14, -1], [17, 1], [19, 1]])
    );
    assert_eq!(v["frobenius"], 4);
    assert_eq!(v["genus"], 3);
    assert_eq!(v["classification"]["med"], true);
    assert_eq!(v["classification"]["symmetric"], false);
    assert_eq!(v["syzygy"]["betti"], serde_json::json!([3, 2]));
}

#[test]
fn analyze_rejects_noncoprime_with_exit_2() {
    let out = nsg(&["analyze", "2,4"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("common divisor"), "stderr: {stderr}");
}

#[test]
fn analyze_reports_telescopic_witness() {
    let out = nsg(&["analyze", "8,9,10,12", "--output", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["classification"]["complete_intersection"], true);
    assert_eq!(v["classification"]["telescopic"], serde_json::json!([8, 12, 10, 9]));
}

#[test]
fn verify_357_counts_nine_identities() {
    let out = nsg(&["verify", "3,5,7"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("identity count: expected 9, executed 9"), "stdout: {stdout}");
    assert!(stdout.contains("failed 0"));
}

#[test]
fn verify_family_filter_runs_only_that_family() {
    let out = nsg(&["verify", "3,5,7", "--families", "theorem2", "--output", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["family"] == "theorem2"));
    assert_eq!(v["identity_count"]["expected"], Value::Null);
}

#[test]
fn verify_filter_with_inapplicable_family_reports_no_checks() {
    let out = nsg(&["verify", "3,5,7", "--families", "telescopic"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("no checks executed"), "stdout: {stdout}");

    let out = nsg(&["verify", "3,5,7", "--families", "telescopic", "--output", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["checks"], serde_json::json!([]));
}

#[test]
fn verify_unknown_family_is_an_input_error() {
    let out = nsg(&["verify", "3,5,7", "--families", "nonsense"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_bresinsky_quintuple_with_supplied_table() {
    let out = nsg(&["verify", "19,23,29,31,37", "--table", &fixture("bresinsky.json"), "--output", "json"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let checks = v["checks"].as_array().unwrap();
    let quintuple: Vec<&Value> =
        checks.iter().filter(|c| c["family"] == "symmetric5").collect();
    assert_eq!(quintuple.len(), 4);
    assert!(quintuple.iter().all(|c| c["status"] == "pass"));
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn verify_broken_table_fails_with_exit_1() {
    let out = nsg(&[
        "verify",
        "19,23,29,31,37",
        "--table",
        &fixture("bresinsky_broken_duality.json"),
        "--output",
        "json",
    ]);
    assert_eq!(exit_code(&out), 1);
    let v = stdout_json(&out);
    let failed: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|c| c["label"] == "degree-duality"));
    // Theorem-level checks are table-independent and still pass.
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["family"] == "theorem1")
        .all(|c| c["status"] == "pass"));
}

#[test]
fn verify_trivial_semigroup_is_an_input_error() {
    let out = nsg(&["verify", "1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn partition_range_matches_and_exits_0() {
    let out = nsg(&["partition", "3,5,7", "--s", "0..20"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let data_rows = stdout.lines().filter(|l| !l.starts_with(['s', 'a'])).count();
    assert_eq!(data_rows, 21, "stdout: {stdout}");
    assert!(stdout.contains("all match: yes"));
}

#[test]
fn partition_single_point_value() {
    let out = nsg(&["partition", "3,5,7", "--s", "10", "--output", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["rows"][0]["dp"], "2");
    assert_eq!(v["rows"][0]["match"], true);
}

#[test]
fn partition_negative_range_needs_waves_only() {
    let out = nsg(&["partition", "3,5,7", "--s", "-14..-1"]);
    assert_eq!(exit_code(&out), 2);

    let out = nsg(&["partition", "3,5,7", "--s", "-14..-1", "--waves-only", "--output", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 14);
    for row in rows {
        assert_eq!(row["total"], "0", "continuation vanishes at s = {}", row["s"]);
        assert_eq!(row["dp"], Value::Null);
    }
}

#[test]
fn waves_command_prints_coefficients() {
    let out = nsg(&["waves", "3,5,7", "--s", "0..5", "--output", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["wave1"], serde_json::json!(["1/210", "1/14", "74/315"]));
    let waves = v["waves"].as_array().unwrap();
    assert_eq!(waves.len(), 3);
    assert_eq!(waves[0]["q"], 3);
    assert_eq!(waves[0]["omega"], 1);
}

#[test]
fn count_matches_hand_computation() {
    let out = nsg(&["count", "8,9,10,12", "--output", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["total"], 23);

    let out = nsg(&["count", "3,5,7", "--output", "json"]);
    assert_eq!(stdout_json(&out)["total"], 9);

    let out = nsg(&["count", "2,3", "--output", "json"]);
    assert_eq!(stdout_json(&out)["total"], 4);
}

#[test]
fn output_is_byte_identical_across_parallelism() {
    for args in [
        vec!["verify", "8,9,10,12", "--output", "json"],
        vec!["partition", "3,5,7", "--s", "0..30", "--output", "json"],
        vec!["verify", "5,6,7,8"],
    ] {
        let mut one = args.clone();
        one.extend(["--parallelism", "1"]);
        let mut four = args.clone();
        four.extend(["--parallelism", "4"]);
        let a = nsg(&one);
        let b = nsg(&four);
        assert_eq!(exit_code(&a), exit_code(&b));
        assert_eq!(a.stdout, b.stdout, "output depends on parallelism for {args:?}");
    }
}

/// The documented JSON report schema round-trips through typed structs.
#[derive(Deserialize)]
struct ReportDoc {
    command: String,
    generators: Vec<u64>,
    identity_count: CountDoc,
    checks: Vec<CheckDoc>,
    summary: SummaryDoc,
}

#[derive(Deserialize)]
struct CountDoc {
    expected: Option<u64>,
    executed: u64,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

#[derive(Deserialize)]
#[allow(dead_code)]
struct CheckDoc {
    family: String,
    label: String,
    q: Option<u64>,
    n: Option<u64>,
    r: Option<u64>,
    k: Option<u64>,
    status: String,
    skip_reason: Option<String>,
    expected: String,
    actual: String,
    residual: Option<String>,
    auxiliary: bool,
}

#[derive(Deserialize)]
struct SummaryDoc {
    passed: u64,
    failed: u64,
    skipped: u64,
}

#[test]
fn verify_json_roundtrips_through_schema() {
    let out = nsg(&["verify", "8,9,10,12", "--output", "json"]);
    assert_eq!(exit_code(&out), 0);
    let doc: ReportDoc = serde_json::from_slice(&out.stdout).expect("schema parse");
    assert_eq!(doc.command, "verify");
    assert_eq!(doc.generators, vec![8, 9, 10, 12]);
    assert_eq!(doc.identity_count.expected, Some(23));
    assert_eq!(doc.identity_count.executed, 23);
    assert_eq!(doc.identity_count.matches, Some(true));
    assert_eq!(doc.summary.failed, 0);
    assert!(doc.summary.passed > 0);
    let _ = doc.summary.skipped;
    assert!(doc.checks.iter().all(|c| c.status == "pass" || c.skip_reason.is_some()));
}

#[test]
fn parallelism_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_nsg"))
        .args(["verify", "3,5,7", "--output", "json"])
        .env("NSG_PARALLELISM", "3")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 0);

    let baseline = nsg(&["verify", "3,5,7", "--output", "json"]);
    assert_eq!(out.stdout, baseline.stdout);

    let bad = Command::new(env!("CARGO_BIN_EXE_nsg"))
        .args(["verify", "3,5,7"])
        .env("NSG_PARALLELISM", "zero")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&bad), 2);
}
