use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn icat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icat"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("icat runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn valid_structures_pass_and_broken_ones_fail() {
    let t = TempDir::new().unwrap();
    write(t.path(), "z2.json", r#"{"kind": "group", "order": 2, "table": [[0, 1], [1, 0]]}"#);
    write(t.path(), "bad.json", r#"{"kind": "group", "order": 2, "table": [[0, 1], [1, 1]]}"#);
    let ok = icat(t.path(), &["check", "structure", "z2.json"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert!(stdout(&ok).starts_with("PASS"));
    let bad = icat(t.path(), &["check", "auto", "bad.json"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).starts_with("FAIL"));
}

#[test]
fn exit_codes_separate_failures_from_bad_input() {
    let t = TempDir::new().unwrap();
    write(t.path(), "nonhom.json", r#"{"source": "S3", "target": "Z2", "map": [0, 1, 0, 0, 0, 0]}"#);
    write(t.path(), "unknown.json", r#"{"source": "Q9", "target": "Z2", "map": [0]}"#);
    write(t.path(), "garbled.json", "{ not json");
    write(t.path(), "collapse.json", r#"{"source": "P2", "target": "P1", "map": [0, 0]}"#);
    assert_eq!(code(&icat(t.path(), &["check", "morphism", "nonhom.json"])), 1);
    assert_eq!(code(&icat(t.path(), &["check", "morphism", "unknown.json"])), 2);
    assert_eq!(code(&icat(t.path(), &["check", "auto", "garbled.json"])), 2);
    assert_eq!(code(&icat(t.path(), &["check", "auto", "missing.json"])), 2);
    assert_eq!(code(&icat(t.path(), &["frobnicate"])), 2);
    let star = icat(t.path(), &["build", "star", "collapse.json"]);
    assert_eq!(code(&star), 3);
    assert!(String::from_utf8_lossy(&star.stderr).contains("kernel"));
}

#[test]
fn semidirect_product_of_the_inversion_action_is_s3() {
    let t = TempDir::new().unwrap();
    write(t.path(), "act.json", r#"{"X": "Z3", "B": "Z2", "act": [[0, 1, 2], [0, 2, 1]]}"#);
    let o = icat(t.path(), &["build", "semidirect", "act.json", "--out", "point.json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(t.path().join("point.json")).unwrap()).unwrap();
    assert_eq!(v["type"], "split-epi");
    assert_eq!(v["structures"]["A"]["order"], 6);
    let table = v["structures"]["A"]["table"].as_array().unwrap();
    let commutes = (0..6).all(|i| (0..6).all(|j| table[i][j] == table[j][i]));
    assert!(!commutes);
    let chk = icat(t.path(), &["check", "auto", "point.json"]);
    assert_eq!(code(&chk), 0, "{}", stdout(&chk));
}

#[test]
fn graph_of_a_morphism_checks_and_classifies_back() {
    let t = TempDir::new().unwrap();
    write(t.path(), "h.json", r#"{"source": "ab:Z4", "target": "ab:Z2", "map": [0, 1, 0, 1]}"#);
    assert_eq!(code(&icat(t.path(), &["build", "rg-from-h", "h.json", "--out", "rg.json"])), 0);
    let chk = icat(t.path(), &["check", "rg", "rg.json"]);
    assert_eq!(code(&chk), 0, "{}", stdout(&chk));
    let cls = icat(t.path(), &["classify", "additive", "rg.json"]);
    assert_eq!(code(&cls), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&cls)).unwrap();
    assert_eq!(v["chain"]["morphisms"]["h"]["map"], serde_json::json!([0, 1, 0, 1]));
    assert!(v["certificate"]["verdict"].as_str().unwrap().starts_with("PASS"));
}

#[test]
fn verify_writes_witnesses_that_replay() {
    let t = TempDir::new().unwrap();
    let o = icat(t.path(), &["verify", "ptset-a2-cex", "--out", "w"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let w = t.path().join("w");
    assert!(w.join("report.json").exists());
    let replay = icat(&w, &["check", "a2-witness", "witness-00-a2-witness.json"]);
    assert_eq!(code(&replay), 1);
    assert!(stdout(&replay).contains("replays stored verdict: yes"));

    let o = icat(t.path(), &["verify", "--campaign", "peiffer", "--max-order", "6", "--out", "p"]);
    assert_eq!(code(&o), 0);
    let replay = icat(&t.path().join("p"), &["check", "auto", "witness-01-pxm.json"]);
    assert_eq!(code(&replay), 1);
    assert!(stdout(&replay).contains("(1, 2)"));
}

#[test]
fn saved_reports_render_like_the_live_run() {
    let t = TempDir::new().unwrap();
    let live = icat(t.path(), &["verify", "star", "--max-size", "3", "--out", "r"]);
    assert_eq!(code(&live), 0);
    let saved = icat(t.path(), &["report", "r/report.json"]);
    assert_eq!(code(&saved), 0);
    assert_eq!(stdout(&saved), stdout(&live));
    assert!(stdout(&saved).starts_with("campaign star (max_size=3)"));
}

#[test]
fn manifests_drive_verify() {
    let t = TempDir::new().unwrap();
    write(t.path(), "m.json", r#"{"campaigns": ["product-model", "peiffer"], "bounds": {"max_order": 4}}"#);
    let o = icat(t.path(), &["verify", "all", "--manifest", "m.json", "--sequential"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("peiffer.max_order=4"));
    assert!(stdout(&o).contains("PASS product-model: "));
}

#[test]
fn enumerate_is_deterministic() {
    let t = TempDir::new().unwrap();
    let a = icat(t.path(), &["enumerate", "group", "--max-size", "8"]);
    let b = icat(t.path(), &["enumerate", "group", "--max-size", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["items"].as_array().unwrap().len(), 14);
    assert_eq!(code(&icat(t.path(), &["enumerate", "group", "--max-size", "100"])), 2);
}

#[test]
fn searches_emit_replayable_bundles() {
    let t = TempDir::new().unwrap();
    let o = icat(t.path(), &["search", "a2-counterexample", "--out", "cex.json"]);
    assert_eq!(code(&o), 0);
    let replay = icat(t.path(), &["check", "auto", "cex.json"]);
    assert!(stdout(&replay).contains("replays stored verdict: yes"));
    let none = icat(t.path(), &["search", "a2-counterexample", "--kind", "group", "--max-size", "6"]);
    assert_eq!(code(&none), 0);
    assert!(stdout(&none).starts_with("no counterexample"));
}
