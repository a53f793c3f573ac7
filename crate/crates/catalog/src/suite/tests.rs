use super::*;

fn run(max_n: usize) -> SuiteReport {
    run_theorem_suite(&SuiteOptions::new(max_n)).unwrap()
}

#[test]
fn small_catalog_has_no_violations() {
    let r = run(4);
    let bad: Vec<_> = r.properties.iter().filter(|p| p.violations > 0).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    assert_eq!(r.status, SuiteStatus::Ok);
}

#[test]
fn single_element_catalog_passes() {
    let r = run(1);
    assert_eq!(r.models, 1);
    assert_eq!(r.total_violations, 0);
    assert_eq!(r.type_distribution.get("vacuous"), Some(&1));
}

#[test]
fn inverted_property_reports_violations() {
    let mut opts = SuiteOptions::new(4);
    opts.properties = Some(vec!["summand-bijection".into(), "type-criteria".into()]);
    opts.invert = Some("type-criteria".into());
    let r = run_theorem_suite(&opts).unwrap();
    assert_eq!(r.properties.len(), 2);
    assert_eq!(r.property("summand-bijection").unwrap().violations, 0);
    let inv = r.property("type-criteria").unwrap();
    assert!(inv.violations > 0);
    assert!(inv.witnesses.len() <= opts.max_witnesses);
    assert_eq!(r.status, SuiteStatus::Violations);
}

#[test]
fn worker_count_does_not_change_report() {
    let mut serial = SuiteOptions::new(5);
    serial.jobs = Some(1);
    let mut parallel = serial.clone();
    parallel.jobs = Some(4);
    assert_eq!(run_theorem_suite(&serial).unwrap(), run_theorem_suite(&parallel).unwrap());
}

#[test]
fn unknown_names_are_rejected() {
    let mut opts = SuiteOptions::new(3);
    opts.properties = Some(vec!["no-such-property".into()]);
    assert!(matches!(run_theorem_suite(&opts), Err(CatalogError::UnknownProperty(_))));
    let mut opts = SuiteOptions::new(3);
    opts.properties = Some(vec!["gea-axioms".into()]);
    opts.invert = Some("type-criteria".into());
    assert!(matches!(run_theorem_suite(&opts), Err(CatalogError::UnknownProperty(_))));
}

#[test]
fn registry_names_are_unique() {
    let names: std::collections::BTreeSet<_> = registry().iter().map(|p| p.name).collect();
    assert_eq!(names.len(), registry().len());
}
