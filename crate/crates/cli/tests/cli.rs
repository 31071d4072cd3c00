//! Runs the binary and compares its output with files under `tests/golden`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcover"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("PCOVER_BUDGET")
        .output()
        .expect("run pcover")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check_golden(name: &str, args: &[&str], code: i32) {
    let o = pcover(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let got = stdout(&o);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(got, want, "output of {args:?} differs from {name}");
}

#[test]
fn group_describe_q8() {
    check_golden("group_q8.txt", &["group", "Q8", "--describe"], 0);
    let out = stdout(&pcover(&["group", "Q8", "--describe"]));
    assert!(out.contains("order 8"));
    assert!(out.contains("1 subgroup of order 2, 3 maximal cyclic"));
}

#[test]
fn group_c4() {
    let out = stdout(&pcover(&["group", "C4", "--describe"]));
    assert!(out.starts_with("C4: order 4, exponent 4\n"));
}

#[test]
fn bad_table_reports_position() {
    let o = pcover(&["group", "table:tests/data/bad.cay"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.cay:3:3"), "{err}");
}

#[test]
fn covers_listing() {
    check_golden("covers_q8.txt", &["covers", "Q8", "--star"], 0);
    let out = stdout(&pcover(&["covers", "C8"]));
    assert!(out.starts_with("C8: 1 (*) cover (1 irredundant), complete"));
    assert!(out.contains("#0 irredundant: <1> C0"));
}

#[test]
fn covers_heisenberg_limited() {
    let o = pcover(&["covers", "Heis3", "--limit", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["covers"].as_array().unwrap().len(), 10);
    assert_eq!(v["truncated"], true);
    // The cover by the four maximal subgroups, all of order 9.
    let four = v["covers"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["cells"].as_array().unwrap().iter().filter(|x| x["order"] == 9).count() == 4);
    assert!(four);
}

#[test]
fn ring_q8_both_methods() {
    check_golden("ring_q8.txt", &["ring", "Q8", "auto"], 0);
}

#[test]
fn ring_klein_whole() {
    let out = stdout(&pcover(&["ring", "E4", "tests/data/e4_whole.cov"]));
    assert!(out.contains("|R_C(G)| = 16 (both)"));
    assert!(out.contains("methods agree"));
}

#[test]
fn ring_d8xc2_oracle() {
    check_golden("ring_d8xc2.txt", &["ring", "D8xC2", "tests/data/d8xc2.cov", "--method", "oracle"], 0);
}

#[test]
fn ring_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.json");
    let o = pcover(&["ring", "Q8", "auto", "--method", "param", "--dump", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["order"], 16);
    assert_eq!(v["elements"].as_array().unwrap().len(), 16);
}

#[test]
fn cover_for_another_group_is_rejected() {
    let o = pcover(&["ring", "Q8", "tests/data/e4_whole.cov"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decompose_q8() {
    check_golden("decompose_q8.txt", &["decompose", "Q8", "auto"], 0);
}

#[test]
fn decompose_d8xc2() {
    check_golden("decompose_d8xc2.txt", &["decompose", "D8xC2", "tests/data/d8xc2.cov"], 0);
}

#[test]
fn simple_targets() {
    check_golden("simple_m2.txt", &["simple", "M2:p=2"], 0);
    let out = stdout(&pcover(&["simple", "N:m=1,n=1,att=1,p=2"]));
    assert!(out.contains("not simple, order 8"));
    let out = stdout(&pcover(&["simple", "E4", "tests/data/e4_whole.cov"]));
    assert!(out.contains(": simple, order 16, M_2(Z_p)"));
    let out = stdout(&pcover(&["simple", "C2"]));
    assert!(out.contains(": simple, order 2, Z_p"));
}

#[test]
fn verify_reports_discrepancies() {
    check_golden("verify.txt", &["verify-paper"], 2);
    check_golden("verify.json", &["verify-paper", "--format", "json"], 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&pcover(&["verify-paper", "--format", "json"]))).unwrap();
    let first = &v["checks"][0];
    assert_eq!((first["example"].as_str(), first["status"].as_str()), (Some("q8"), Some("pass")));
    assert!(v["discrepancies"].as_array().unwrap().iter().any(|c| c["example"] == "q8xc2/D/two-generated"));
}

#[test]
fn output_is_deterministic() {
    for args in [&["decompose", "D8xC2", "tests/data/d8xc2.cov", "--format", "json"][..], &["ring", "Q8", "auto", "--format", "json"]] {
        assert_eq!(pcover(args).stdout, pcover(args).stdout);
    }
}

#[test]
fn budget_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_pcover"))
        .args(["ring", "D8xC2", "tests/data/d8xc2.cov", "--method", "param"])
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env("PCOVER_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("size limit"));
    let o = Command::new(env!("CARGO_BIN_EXE_pcover"))
        .args(["group", "Q8"])
        .env("PCOVER_BUDGET", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
