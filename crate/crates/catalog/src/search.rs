//! Exhaustive counterexample search over the catalog.

use gea_core::congruence::{all_zero_isolating_relations, check_der, check_sk};
use gea_core::dimension::{decompose_types, TypeVerdict};
use gea_core::exocenter::exocenter;
use gea_core::hull::{all_hull_systems, is_divisible, is_monad};
use gea_core::{GeaTable, SkContext};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{enumerate_geas_with, CatalogModel};
use crate::error::{CatalogError, Result};
use crate::suite::hull_display;

/// What a predicate found inside one model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hull: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub model: String,
    pub n: usize,
    pub elements: Vec<String>,
    /// Row-major sums, `null` where undefined.
    pub sum_table: Vec<Vec<Option<String>>>,
    #[serde(flatten)]
    pub finding: Finding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum SearchOutcome {
    Found { predicate: String, witness: Witness },
    Exhausted { predicate: String, models_checked: usize },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

type Predicate = fn(&GeaTable) -> Result<Option<Finding>>;

/// Registered predicates: name, description, test.
pub const PREDICATES: &[(&str, &str, Predicate)] = &[
    ("sk-and-not-der", "an SK-congruence that is not a dimension equivalence relation", sk_and_not_der),
    ("non-type-I-dgea", "a dimension equivalence relation whose decomposition is not purely type I", non_type_i),
    ("divisible-hull-with-monads", "a divisible hull system with a nonzero monad", divisible_with_monads),
    ("trivially-false", "never holds", |_| Ok(None)),
];

fn lookup(name: &str) -> Result<Predicate> {
    PREDICATES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|p| p.2)
        .ok_or_else(|| CatalogError::UnknownPredicate(name.to_string()))
}

/// Returns the first model, in catalog order, satisfying the predicate.
pub fn search_counterexample(name: &str, max_n: usize, limit: usize, jobs: Option<usize>) -> Result<SearchOutcome> {
    let predicate = lookup(name)?;
    let run = || -> Result<SearchOutcome> {
        let models = enumerate_geas_with(max_n, limit, jobs)?;
        let hits: Vec<Result<Option<Finding>>> = models.par_iter().map(|m| predicate(&m.gea)).collect();
        for (m, hit) in models.iter().zip(hits) {
            if let Some(finding) = hit? {
                return Ok(SearchOutcome::Found {
                    predicate: name.to_string(),
                    witness: witness(m, finding),
                });
            }
        }
        Ok(SearchOutcome::Exhausted {
            predicate: name.to_string(),
            models_checked: models.len(),
        })
    };
    match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| CatalogError::Format(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn witness(m: &CatalogModel, finding: Finding) -> Witness {
    let g = &m.gea;
    let n = g.len();
    Witness {
        model: m.key.clone(),
        n,
        elements: g.names().to_vec(),
        sum_table: (0..n)
            .map(|e| (0..n).map(|f| g.sum(e, f).map(|s| g.name(s).to_string())).collect())
            .collect(),
        finding,
    }
}

fn sk_and_not_der(g: &GeaTable) -> Result<Option<Finding>> {
    let exo = exocenter(g);
    for rel in all_zero_isolating_relations(g.len()) {
        if !check_sk(g, &rel).is_sk() {
            continue;
        }
        let report = check_der(g, &rel, &exo)?;
        if let Some((axiom, verdict)) = report.first_failure() {
            return Ok(Some(Finding {
                relation: Some(rel.display(g)),
                hull: None,
                detail: format!("{axiom} fails at {:?}", verdict.witness.as_deref().map(|w| g.names_of(w)).unwrap_or_default()),
            }));
        }
    }
    Ok(None)
}

fn non_type_i(g: &GeaTable) -> Result<Option<Finding>> {
    let exo = exocenter(g);
    for rel in all_zero_isolating_relations(g.len()) {
        if !check_sk(g, &rel).is_sk() || !check_der(g, &rel, &exo)?.is_der() {
            continue;
        }
        let ctx = SkContext::with_exocenter(g.clone(), exo.clone(), rel.clone())?;
        let d = decompose_types(&ctx)?;
        if !matches!(d.verdict, TypeVerdict::I | TypeVerdict::Vacuous) {
            return Ok(Some(Finding {
                relation: Some(rel.display(g)),
                hull: None,
                detail: format!("decomposition {}", d.label()),
            }));
        }
    }
    Ok(None)
}

fn divisible_with_monads(g: &GeaTable) -> Result<Option<Finding>> {
    let exo = exocenter(g);
    for h in all_hull_systems(g, &exo) {
        if !is_divisible(g, &h).divisible {
            continue;
        }
        if let Some(p) = g.nonzero().iter().find(|&p| is_monad(g, &h, p)) {
            return Ok(Some(Finding {
                relation: None,
                hull: Some(hull_display(g, &h)),
                detail: format!("{} is a monad", g.name(p)),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_LIMIT;

    #[test]
    fn trivially_false_is_exhausted() {
        for n in 1..=4 {
            let out = search_counterexample("trivially-false", n, DEFAULT_LIMIT, None).unwrap();
            assert!(matches!(out, SearchOutcome::Exhausted { .. }));
        }
    }

    #[test]
    fn small_catalog_facts() {
        for name in ["sk-and-not-der", "non-type-I-dgea"] {
            let out = search_counterexample(name, 5, DEFAULT_LIMIT, None).unwrap();
            assert_eq!(out.witness(), None, "{name}");
        }
    }

    #[test]
    fn result_does_not_depend_on_workers() {
        let a = search_counterexample("divisible-hull-with-monads", 5, DEFAULT_LIMIT, Some(1)).unwrap();
        let b = search_counterexample("divisible-hull-with-monads", 5, DEFAULT_LIMIT, Some(3)).unwrap();
        assert_eq!(a, b);
        let w = a.witness().expect("two-element chain has a monad");
        assert_eq!(w.n, 2);
        assert_eq!(w.finding.detail, "a is a monad");
    }

    #[test]
    fn unknown_predicate_is_rejected() {
        assert!(matches!(
            search_counterexample("nope", 3, DEFAULT_LIMIT, None),
            Err(CatalogError::UnknownPredicate(_))
        ));
    }
}
