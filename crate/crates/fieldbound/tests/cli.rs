use std::process::Command;

use fieldbound::cli::{run, EXIT_BORDERLINE, EXIT_OK, EXIT_USAGE};
use fieldbound::report::{CampaignDoc, ReportDoc};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fieldbound").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn scan_single_family_json() {
    let (code, out, _) = call(&["scan", "--family", "gamma6_2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let doc: ReportDoc = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.max_total_bound, 75);
    assert_eq!(doc.family, "gamma6_2");
    // parse then emit reproduces the bytes
    assert_eq!(fieldbound::report::to_json(&doc).unwrap(), out);
}

#[test]
fn scan_all_round_trips_and_flags_the_tie() {
    let (code, out, err) = call(&["scan", "--family", "all"]);
    assert_eq!(code, EXIT_BORDERLINE, "{err}");
    assert!(err.contains("gamma6_1 has 1 borderline"));
    let doc: CampaignDoc = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.aggregate.bound, 138);
    let bounds: Vec<u64> = doc.reports.iter().map(|r| r.max_total_bound).collect();
    assert_eq!(bounds, [56, 75, 138, 42, 138]);
    assert_eq!(doc.reports[4].delegated_from.as_deref(), Some("gamma6_3"));
    assert_eq!(fieldbound::report::to_json(&doc).unwrap(), out);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["scan", "--family", "bogus"]).0, EXIT_USAGE);
    assert_eq!(call(&["scan", "--family", "fuchsian_pentagon"]).0, EXIT_USAGE);
    assert_eq!(
        call(&["scan", "--family", "gamma6_2", "--epsilon", "0.5"]).0,
        EXIT_USAGE
    );
    assert_eq!(call(&["field-info", "--l", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["field-info", "--k", "9"]).0, EXIT_USAGE);
    assert_eq!(call(&["takeuchi", "--g", "0", "--t", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn field_info_examples() {
    let (code, out, _) = call(&["field-info", "--k", "113", "--s", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degree"], 56);
    let (_, out, _) = call(&["field-info", "--l", "151"]);
    assert!(out.contains("degree        75"));
    let (_, out, _) = call(&["field-info", "--l", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["discr"], "5");
}

#[test]
fn takeuchi_and_lemma() {
    let (code, out, _) = call(&["takeuchi", "--g", "0", "--t", "5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("<= 12"));
    let (code, out, _) = call(&["verify-lemma", "pentagon-min"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with("PASS"));
}

#[test]
fn verify_table() {
    let (code, out, _) = call(&["verify"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("PASS aggregate: expected 138"));
    assert!(!out.contains("FAIL"));
    let (_, out, _) = call(&["verify", "--epsilon", "1e-2"]);
    assert!(out.contains("WARN gamma6_2 l=19 exceptional"));
}

#[test]
fn out_path_and_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/r.csv");
    let (code, out, _) = call(&[
        "scan",
        "--family",
        "gamma7_1",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("family,l,k,s,degree"));
    assert_eq!(csv.lines().count(), 1 + 495);

    let status = Command::new(env!("CARGO_BIN_EXE_fieldbound"))
        .args(["scan", "--family", "gamma6_2"])
        .env("FIELDBOUND_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let doc: ReportDoc =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("scan-gamma6_2.json")).unwrap()).unwrap();
    assert_eq!(doc.max_total_bound, 75);
}
