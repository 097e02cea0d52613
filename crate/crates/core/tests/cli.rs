use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn biq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biq")).args(args).output().expect("spawn biq")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn free_action_exits_zero_and_records_seed() {
    let out = biq(&["--seed", "77", "free", data("corollary_su3.json").to_str().unwrap(), "--mode", "mod-center"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["header"]["seed"], 77);
    assert_eq!(v["header"]["tool"], "biq");
    assert_eq!(v["header"]["schema_version"], 1);
}

#[test]
fn non_free_action_exits_one_with_witness() {
    let out = biq(&["free", data("eschenburg_not_free.json").to_str().unwrap(), "--oracle", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("witness"), "{text}");
}

#[test]
fn malformed_input_exits_two() {
    let out = biq(&["free", data("malformed.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_file_and_bad_budget_exit_two() {
    assert_eq!(biq(&["free", "/nonexistent/weights.json"]).status.code(), Some(2));
    let out = biq(&["--planes", "0", "scan", data("aloff_wallach.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(biq(&["fixtures", "example9"]).status.code(), Some(2));
}

#[test]
fn csv_report_carries_header_comment() {
    let out = biq(&["--format", "csv", "--seed", "5", "free", data("sp2_circle.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# biq "));
    assert!(text.contains("seed 5"));
    assert!(lines.next().unwrap().starts_with("group,n,k,mode,free"));
}

#[test]
fn eschenburg_enumeration_is_deterministic() {
    let a = biq(&["catalog", "enumerate-eschenburg", "--bound", "2"]);
    let b = biq(&["catalog", "enumerate-eschenburg", "--bound", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.split(|&c| c == b'\n').filter(|l| !l.is_empty()).count() > 1);
}

#[test]
fn output_file_is_written_whole() {
    let dir = std::env::temp_dir().join(format!("biq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = biq(&["-o", path.to_str().unwrap(), "free", data("aloff_wallach.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["header"]["command"], "free");
    let leftovers: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_tables_passes() {
    let out = biq(&["catalog", "verify-tables", "--n-cap", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn scan_identity_metric_reports_certificates() {
    let out = biq(&["--planes", "200", "--restarts", "2", "--points", "2", "scan", data("sp2_circle.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["header"]["command"], "scan");
}
