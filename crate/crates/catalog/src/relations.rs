//! Zero-isolating equivalence relations on a model and their verdicts.

use gea_core::congruence::{all_zero_isolating_relations, check_der, check_sk};
use gea_core::dimension::decompose_types;
use gea_core::exocenter::exocenter;
use gea_core::{EquivRel, ExoSet, GeaTable, SkContext, SkReport};
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Short form of a type decomposition for catalog records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub label: String,
    /// `(name, image)` for each of the seven projections.
    pub projections: Vec<(String, Vec<usize>)>,
    pub unit_i_f: String,
    pub checks_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    /// Class id per element, normalized so that ids appear in order.
    pub partition: Vec<usize>,
    pub sk: bool,
    pub der: bool,
    pub report: SkReport,
    pub decomposition: Option<DecompositionSummary>,
}

impl RelationRecord {
    pub fn relation(&self) -> EquivRel {
        EquivRel::from_class_ids(&self.partition)
    }
}

/// Every partition with `{0}` as a singleton class, with its verdicts.
/// DER relations also carry a decomposition summary.
pub fn enumerate_relations(g: &GeaTable) -> Result<Vec<RelationRecord>> {
    let exo = exocenter(g);
    all_zero_isolating_relations(g.len())
        .into_iter()
        .map(|rel| relation_record(g, &exo, rel))
        .collect()
}

fn relation_record(g: &GeaTable, exo: &ExoSet, rel: EquivRel) -> Result<RelationRecord> {
    let report = check_sk(g, &rel);
    let sk = report.is_sk();
    let report = if sk { check_der(g, &rel, exo)? } else { report };
    let der = report.is_der();
    let decomposition = if der {
        let ctx = SkContext::with_exocenter(g.clone(), exo.clone(), rel.clone())?;
        let d = decompose_types(&ctx)?;
        Some(DecompositionSummary {
            label: d.label(),
            projections: d.projections().iter().map(|(name, m)| (name.to_string(), m.image())).collect(),
            unit_i_f: g.name(d.unit_i_f).to_string(),
            checks_hold: d.checks.all(),
        })
    } else {
        None
    };
    Ok(RelationRecord {
        partition: rel.class_ids().to_vec(),
        sk,
        der,
        report,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gea_core::fixtures::{b4, c3, t3};

    fn sk_partitions(g: &GeaTable) -> Vec<Vec<usize>> {
        enumerate_relations(g)
            .unwrap()
            .into_iter()
            .filter(|r| r.sk)
            .inspect(|r| assert!(r.der))
            .map(|r| r.partition)
            .collect()
    }

    #[test]
    fn fixture_congruence_counts() {
        assert!(sk_partitions(&t3()).is_empty());
        assert_eq!(sk_partitions(&c3()), vec![vec![0, 1, 2]]);
        let b = b4();
        let (a, bb) = (b.index_of("a").unwrap(), b.index_of("b").unwrap());
        let parts = sk_partitions(&b);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().any(|p| p == &vec![0, 1, 2, 3]));
        assert!(parts.iter().any(|p| p[a] == p[bb] && p.iter().collect::<std::collections::BTreeSet<_>>().len() == 3));
    }

    #[test]
    fn der_records_carry_decompositions() {
        for r in enumerate_relations(&b4()).unwrap() {
            assert_eq!(r.der, r.decomposition.is_some());
            if let Some(d) = r.decomposition {
                assert_eq!(d.label, "I_F");
                assert_eq!(d.unit_i_f, "1");
                assert!(d.checks_hold);
            }
        }
    }
}
