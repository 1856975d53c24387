//! One line per acceptance criterion; the test fails if any criterion does.

use qnorm::verify::{run_suite, SuiteConfig};

#[test]
fn acceptance_criteria() {
    let report = run_suite(&SuiteConfig::default());
    for c in &report.criteria {
        println!("{}", c.line());
    }
    assert_eq!(report.criteria.len(), 10);
    let failed: Vec<usize> = report.criteria.iter().filter(|c| !c.pass()).map(|c| c.number).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn small_budget_weakens_only_the_orbit_bound() {
    let report = run_suite(&SuiteConfig { budget: Some(10), ..SuiteConfig::default() });
    let first = &report.criteria[0];
    assert!(first.checks_pass, "{}", first.line());
    let default = run_suite(&SuiteConfig { seed: 7, ..SuiteConfig::default() });
    let pattern = |r: &qnorm::verify::SuiteReport| r.criteria.iter().map(|c| c.checks_pass).collect::<Vec<_>>();
    assert_eq!(pattern(&default), pattern(&report));
}
