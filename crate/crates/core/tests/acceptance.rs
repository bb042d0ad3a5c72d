use opsusp_core::acceptance::{run_acceptance, AcceptanceReport, Profile};

fn profile() -> Profile {
    std::env::var("OPSUSP_PROFILE").ok().and_then(|p| p.parse().ok()).unwrap_or(Profile::Full)
}

#[test]
fn acceptance_criteria() {
    let report = run_acceptance(profile());
    println!("{report}");
    println!("elapsed {:.1}s", report.elapsed.as_secs_f64());
    let s = serde_json::to_string(&report).unwrap();
    let back: AcceptanceReport = serde_json::from_str(&s).unwrap();
    assert_eq!(back.criteria, report.criteria);
    assert_eq!(report.criteria.len(), 11);
    let failed: Vec<_> = report.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
