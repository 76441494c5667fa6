use icat::campaign::{run_campaign, Manifest, Report, CAMPAIGNS};
use icat::format::{from_json, to_json, ActionFile, Bundle};
use icat::par::Exec;

fn small(name: &str) -> Report {
    run_campaign(name, &Manifest::default(), Some(3), Exec::default()).unwrap()
}

#[test]
fn every_campaign_passes_at_small_bounds() {
    for name in CAMPAIGNS {
        // the smallest counterexample maps a 3-element set to a 4-element one
        let cap = if name == "ptset-a2-cex" { 4 } else { 3 };
        let r = run_campaign(name, &Manifest::default(), Some(cap), Exec::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(!r.checks.is_empty(), "{name}");
    }
}

#[test]
fn too_small_a_bound_fails_honestly() {
    let r = small("ptset-a2-cex");
    assert!(!r.passed());
    assert!(r.checks[0].summary.contains("no counterexample"));
}

#[test]
fn cap_lowers_size_bounds_only() {
    let r = small("ptset-a1");
    assert_eq!(r.bounds["max_size"], 3);
    assert_eq!(r.bounds["source_bound"], 6);
    let r = run_campaign("ptset-a1", &Manifest::default(), None, Exec::Sequential).unwrap();
    assert_eq!(r.bounds["max_size"], 5);
}

#[test]
fn manifest_bounds_override_defaults() {
    let m: Manifest = from_json(r#"{"max_size": 2, "bounds": {"source_bound": 3}}"#).unwrap();
    let r = run_campaign("ptset-a1", &m, None, Exec::Sequential).unwrap();
    assert_eq!(r.bounds["max_size"], 2);
    assert_eq!(r.bounds["source_bound"], 3);
    assert!(r.checks[0].summary.starts_with("4/4"));
}

#[test]
fn all_prefixes_bounds_and_check_names() {
    let m: Manifest = from_json(r#"{"campaigns": ["star", "peiffer"]}"#).unwrap();
    let r = run_campaign("all", &m, Some(3), Exec::default()).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.bounds["star.max_size"], 3);
    assert_eq!(r.bounds["peiffer.max_order"], 3);
    assert!(r.checks.iter().all(|c| c.name.starts_with("star: ") || c.name.starts_with("peiffer: ")));
}

#[test]
fn unknown_campaigns_are_errors() {
    let err = run_campaign("nope", &Manifest::default(), None, Exec::Sequential).unwrap_err();
    assert!(err.to_string().contains("unknown campaign"));
    let m: Manifest = from_json(r#"{"campaigns": ["star", "nope"]}"#).unwrap();
    assert!(run_campaign("all", &m, Some(2), Exec::Sequential).is_err());
}

#[test]
fn reports_render_one_line_per_check() {
    let r = small("product-model");
    let text = r.render();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), r.checks.len() + 2);
    assert!(lines[0].starts_with("campaign product-model"));
    assert!(lines[1..=r.checks.len()].iter().all(|l| l.starts_with("  PASS ")));
    assert!(lines.last().unwrap().starts_with(&format!("PASS: {0}/{0} checks", r.checks.len())));
}

#[test]
fn reports_round_trip_through_json() {
    let r = small("peiffer");
    let back: Report = from_json(&to_json(&r)).unwrap();
    assert_eq!(back, r);
}

#[test]
fn stored_witnesses_replay() {
    let r = run_campaign("ptset-a2-cex", &Manifest::default(), None, Exec::default()).unwrap();
    let c = r.checks.iter().find(|c| c.witness.is_some()).expect("a witness");
    assert_eq!(c.witness_kind.as_deref(), Some("a2-witness"));
    let b: Bundle = serde_json::from_value(c.witness.clone().unwrap()).unwrap();
    assert!(b.to_a2_witness().unwrap().replays());

    let r = small("peiffer");
    let c = r.checks.iter().find(|c| c.witness.is_some()).expect("the S3 witness");
    assert_eq!(c.witness_kind.as_deref(), Some("pxm"));
    let a: ActionFile = serde_json::from_value(c.witness.clone().unwrap()).unwrap();
    let pxm = a.to_pxm().unwrap();
    assert_eq!(icat::actions::peiffer_failure(&pxm), Some((1, 2)));
}

#[test]
fn campaign_results_do_not_depend_on_timing() {
    let a = small("act-pt-grp");
    let b = small("act-pt-grp");
    assert_eq!(a.checks, b.checks);
    assert_eq!(a.bounds, b.bounds);
}
