use std::process::{Command, Output};

use hgs_core::report::Report;

fn hgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgs")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_six_markdown() {
    let o = hgs(&["catalog", "--q", "3", "--type", "both", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows = text.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| Order")).count();
    assert_eq!(rows, 6);
}

#[test]
fn json_catalog_totals() {
    let o = hgs(&["catalog", "--q", "3", "--type", "cyclic"]);
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((report.summary.groups, report.summary.classes), (14, 12));
    assert_eq!(report.meta.p, Some(7));
}

#[test]
fn not_sophie_germain() {
    let o = hgs(&["catalog", "--q", "7"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Sophie Germain"));
}

#[test]
fn usage_errors_have_their_own_code() {
    assert_eq!(hgs(&["catalog"]).status.code(), Some(2));
    assert_eq!(hgs(&["enumerate", "--q", "3", "--n", "21"]).status.code(), Some(2));
    assert_eq!(hgs(&["catalog", "--q", "3", "--workers", "0"]).status.code(), Some(2));
    assert_eq!(hgs(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_is_named() {
    let o = Command::new(env!("CARGO_BIN_EXE_hgs"))
        .args(["enumerate", "--q", "3", "--type", "cyclic"])
        .env("HGS_ELEMENT_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap of 100"));
}

#[test]
fn verify_cyclic_is_clean() {
    let o = hgs(&["verify", "--q", "3", "--type", "cyclic", "--workers", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.summary.diffs, 0);
}

#[test]
fn byte_identical_reruns() {
    for args in [
        &["catalog", "--q", "5", "--format", "csv"][..],
        &["enumerate", "--n", "21", "--format", "json"][..],
        &["oracle", "--n", "4", "--format", "md"][..],
    ] {
        let a = hgs(args);
        let b = hgs(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("hgs-cli-test-{}.json", std::process::id()));
    let o = hgs(&["catalog", "--q", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.summary.classes, 6);
    let _ = std::fs::remove_file(path);
}
