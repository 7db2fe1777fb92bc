//! End-to-end runs of the verification harness on the built-in catalog.

use charind::catalog::{build, Catalog};
use charind_verify::checks::{check_dixon_bound, check_remark};
use charind_verify::{plan, run_verification, Budget, Check, Status, VerificationReport, VerifyConfig};

fn run(checks: &[Check], groups: &[&str]) -> VerificationReport {
    let catalog = Catalog::builtin().unwrap();
    let cfg = VerifyConfig {
        checks: checks.to_vec(),
        groups: Some(groups.iter().map(|s| s.to_string()).collect()),
        ..VerifyConfig::default()
    };
    run_verification(&catalog, &cfg).unwrap()
}

#[test]
fn sym4_has_witnesses_and_psl27_has_none() {
    let r = run(&[Check::TheoremA], &["Sym4", "PSL27"]);
    assert_eq!(r.summary.passed, 2);
    let by = |g: &str| r.results.iter().find(|x| x.group == g).unwrap();
    assert_eq!(by("Sym4").data["witnesses"], "2");
    assert_eq!(by("PSL27").data["witnesses"], "0");
}

#[test]
fn remark_cases_reproduce() {
    let r = run(&[Check::RemarkCounterexamples], &["SL25", "SL29"]);
    assert_eq!(r.summary.passed, 2, "{}", r.to_text());
    let sl25 = r.results.iter().find(|x| x.group == "SL25").unwrap();
    assert_eq!(sl25.data["p"], "5");
    assert!(sl25.witness.contains("2*X."), "{}", sl25.witness);
    let sl29 = r.results.iter().find(|x| x.group == "SL29").unwrap();
    assert_eq!(sl29.data["p"], "3");
}

#[test]
fn wrong_expectations_fail_with_witness() {
    let g = build("SL25").unwrap().group.clone();
    let bad = check_remark(&g, 5, 1, 5, 2).unwrap();
    assert!(!bad.passed());
    assert!(!bad.witness().is_empty());
    let good = check_remark(&g, 5, 1, 6, 2).unwrap();
    assert!(good.passed(), "{}", good.witness());

    let s4 = build("Sym4").unwrap().group.clone();
    let tight = check_dixon_bound(&s4, 3).unwrap();
    assert!(!tight.passed());
    assert!(tight.witness().contains("order 8"), "{}", tight.witness());
}

#[test]
fn oversized_and_inapplicable_are_skipped() {
    let r = run(&[Check::TheoremQs, Check::DixonBound], &["PSU43"]);
    assert_eq!(r.summary.failed, 0);
    assert!(r.results.iter().all(|x| x.status == Status::Skipped));
    assert!(r.results.iter().any(|x| x.skip_reason.as_deref() == Some("oversized")));
    assert!(r.results.iter().any(|x| x.skip_reason.as_deref() == Some("not-applicable")));
    assert!(!r.has_failures());
}

#[test]
fn budget_skips_large_suites() {
    let catalog = Catalog::builtin().unwrap();
    let mut budget = Budget::default();
    budget.set("max-order", "100").unwrap();
    let cfg = VerifyConfig {
        checks: vec![Check::TheoremA],
        groups: Some(vec!["Alt5".into(), "Sym5".into()]),
        budget,
        ..VerifyConfig::default()
    };
    let skip: Vec<Option<String>> = plan(&catalog, &cfg).unwrap().into_iter().map(|t| t.skip).collect();
    assert_eq!(skip, vec![None, Some("budget".to_string())]);
    let mut b = Budget::default();
    assert!(b.set("bogus", "1").is_err());
    assert!(b.set("max-order", "many").is_err());
}

#[test]
fn unknown_group_is_an_error() {
    let catalog = Catalog::builtin().unwrap();
    let cfg = VerifyConfig { groups: Some(vec!["Nope".into()]), ..VerifyConfig::default() };
    assert!(run_verification(&catalog, &cfg).is_err());
}

#[test]
fn reports_are_ordered_and_thread_count_independent() {
    let catalog = Catalog::builtin().unwrap();
    let groups: Vec<String> = ["Sym4", "Alt5", "PSL27", "SL25", "Q8C4"].iter().map(|s| s.to_string()).collect();
    let mk = |jobs| VerifyConfig { groups: Some(groups.clone()), jobs, ..VerifyConfig::default() };
    let mut a = run_verification(&catalog, &mk(1)).unwrap();
    let mut b = run_verification(&catalog, &mk(4)).unwrap();
    a.normalize_timing();
    b.normalize_timing();
    assert_eq!(a.to_text(), b.to_text());
    assert_eq!(a.to_json(), b.to_json());
    let keys: Vec<(&str, &str)> = a.results.iter().map(|r| (r.check.as_str(), r.group.as_str())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(!a.has_failures(), "{}", a.to_text());
    let parsed: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(parsed["summary"]["total"].as_u64().unwrap() as usize, a.results.len());
}
