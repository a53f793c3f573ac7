//! Equivalence relations on a model, the SK axioms, and splitting maps.

use serde::{Deserialize, Serialize};

use crate::elemset::ElemSet;
use crate::error::{CoreError, Result};
use crate::exocenter::{exocenter, ExoMap, ExoSet};
use crate::gea::GeaTable;
use crate::hull::{check_hull_system, HullSystem};

/// An equivalence relation stored as normalized class ids: classes are
/// numbered in order of their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EquivRel {
    class: Vec<usize>,
}

impl EquivRel {
    pub fn equality(n: usize) -> Self {
        EquivRel { class: (0..n).collect() }
    }

    pub fn from_class_ids(ids: &[usize]) -> Self {
        let mut seen: Vec<usize> = Vec::new();
        let class = ids
            .iter()
            .map(|id| match seen.iter().position(|x| x == id) {
                Some(i) => i,
                None => {
                    seen.push(*id);
                    seen.len() - 1
                }
            })
            .collect();
        EquivRel { class }
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class
    }

    pub fn len(&self) -> usize {
        self.class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class.is_empty()
    }

    pub fn equiv(&self, e: usize, f: usize) -> bool {
        self.class[e] == self.class[f]
    }

    pub fn class_of(&self, e: usize) -> ElemSet {
        (0..self.len()).filter(|&f| self.equiv(e, f)).collect()
    }

    pub fn classes(&self) -> Vec<ElemSet> {
        let k = self.class.iter().max().map_or(0, |m| m + 1);
        (0..k)
            .map(|c| (0..self.len()).filter(|&e| self.class[e] == c).collect())
            .collect()
    }

    /// Classes with more than one member, as name lists.
    pub fn display(&self, g: &GeaTable) -> String {
        let parts: Vec<String> = self
            .classes()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("{{{}}}", g.set_names(c).join(" ")))
            .collect();
        if parts.is_empty() {
            "equality".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Builds a relation from listed classes; unlisted elements are singletons.
pub fn build_equiv(g: &GeaTable, classes: &[ElemSet]) -> Result<EquivRel> {
    let n = g.len();
    let mut ids: Vec<usize> = (0..n).collect();
    let mut covered = ElemSet::EMPTY;
    for c in classes {
        if let Some(bad) = c.iter().find(|&e| e >= n) {
            return Err(CoreError::UnknownElement(bad.to_string()));
        }
        if let Some(dup) = c.intersection(covered).first() {
            return Err(CoreError::OverlappingClasses(g.name(dup).to_string()));
        }
        covered = covered.union(*c);
        if let Some(rep) = c.first() {
            for e in *c {
                ids[e] = rep;
            }
        }
    }
    Ok(EquivRel::from_class_ids(&ids))
}

/// Like [`build_equiv`] with classes given by element names.
pub fn build_equiv_named<S: AsRef<str>>(g: &GeaTable, classes: &[Vec<S>]) -> Result<EquivRel> {
    let mut sets = Vec::new();
    for c in classes {
        let mut set = ElemSet::EMPTY;
        for name in c {
            let e = g
                .index_of(name.as_ref())
                .ok_or_else(|| CoreError::UnknownElement(name.as_ref().to_string()))?;
            if set.contains(e) {
                return Err(CoreError::OverlappingClasses(name.as_ref().to_string()));
            }
            set.insert(e);
        }
        sets.push(set);
    }
    build_equiv(g, &sets)
}

/// Every equivalence relation on `g` that keeps `{0}` as a class, in
/// restricted-growth order.
pub fn all_zero_isolating_relations(n: usize) -> Vec<EquivRel> {
    fn go(n: usize, ids: &mut Vec<usize>, max: usize, out: &mut Vec<EquivRel>) {
        if ids.len() == n {
            out.push(EquivRel::from_class_ids(ids));
            return;
        }
        for c in 1..=max + 1 {
            ids.push(c);
            go(n, ids, max.max(c), out);
            ids.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(n, &mut vec![0], 0, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl AxiomVerdict {
    fn from_witness(witness: Option<Vec<usize>>) -> Self {
        AxiomVerdict {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkReport {
    pub sk1: AxiomVerdict,
    pub sk2: AxiomVerdict,
    pub sk3d: AxiomVerdict,
    pub sk3e: AxiomVerdict,
    pub sk4a: AxiomVerdict,
    pub sk4b: AxiomVerdict,
    /// Separation of unrelated pairs by splitting maps; only for SK relations.
    pub sk4a_prime: Option<AxiomVerdict>,
    /// Whether separation agrees with "unrelated implies disjoint hulls".
    pub der_forms_agree: Option<bool>,
}

impl SkReport {
    pub fn axioms(&self) -> Vec<(&'static str, &AxiomVerdict)> {
        let mut v = vec![
            ("SK1", &self.sk1),
            ("SK2", &self.sk2),
            ("SK3d", &self.sk3d),
            ("SK3e", &self.sk3e),
            ("SK4a", &self.sk4a),
            ("SK4b", &self.sk4b),
        ];
        if let Some(p) = &self.sk4a_prime {
            v.push(("SK4a'", p));
        }
        v
    }

    pub fn is_sk(&self) -> bool {
        self.axioms().iter().take(6).all(|(_, v)| v.holds)
    }

    pub fn is_der(&self) -> bool {
        self.is_sk() && self.sk4a_prime.as_ref().is_some_and(|v| v.holds)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &AxiomVerdict)> {
        self.axioms().into_iter().find(|(_, v)| !v.holds)
    }
}

/// Precomputed sub-equivalence and relatedness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relations {
    /// `subeq[e]` is the set of `f` with `e ≾ f`.
    subeq: Vec<ElemSet>,
    related: Vec<ElemSet>,
}

impl Relations {
    pub fn new(g: &GeaTable, rel: &EquivRel) -> Self {
        let n = g.len();
        let classes: Vec<ElemSet> = (0..n).map(|e| rel.class_of(e)).collect();
        let up_of = |s: ElemSet| s.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(g.up(x)));
        let subeq = (0..n).map(|e| up_of(classes[e])).collect();
        let related = (0..n)
            .map(|e| {
                g.down(e)
                    .without(0)
                    .iter()
                    .fold(ElemSet::EMPTY, |acc, e1| acc.union(up_of(classes[e1].without(0))))
            })
            .collect();
        Relations { subeq, related }
    }

    /// `e ≾ f`: some `f1 <= f` has `e ∼ f1`.
    pub fn subequiv(&self, e: usize, f: usize) -> bool {
        self.subeq[e].contains(f)
    }

    /// Nonzero `e1 <= e` and `f1 <= f` with `e1 ∼ f1` exist.
    pub fn related(&self, e: usize, f: usize) -> bool {
        self.related[e].contains(f)
    }

    pub fn related_set(&self, e: usize) -> ElemSet {
        self.related[e]
    }

    /// Closed downward under `≾`.
    pub fn is_hereditary(&self, s: ElemSet) -> bool {
        s.iter()
            .all(|h| (0..self.subeq.len()).all(|e| !self.subequiv(e, h) || s.contains(e)))
    }

    /// Every nonzero `d1 <= d` is related to `e`.
    pub fn is_descendent(&self, g: &GeaTable, d: usize, e: usize) -> bool {
        g.down(d).without(0).iter().all(|d1| self.related(d1, e))
    }
}

pub fn check_sk(g: &GeaTable, rel: &EquivRel) -> SkReport {
    let n = g.len();
    let rels = Relations::new(g, rel);
    let sk1 = (1..n).find(|&e| rel.equiv(e, 0)).map(|e| vec![e]);

    let mut sk2 = None;
    'sk2: for e1 in 0..n {
        for e2 in g.perp_set(e1) {
            for f1 in rel.class_of(e1) {
                for f2 in g.perp_set(f1).intersection(rel.class_of(e2)) {
                    if !rel.equiv(g.sum(e1, e2).unwrap(), g.sum(f1, f2).unwrap()) {
                        sk2 = Some(vec![e1, e2, f1, f2]);
                        break 'sk2;
                    }
                }
            }
        }
    }

    let mut sk3d = None;
    'sk3d: for p in 0..n {
        for s in 0..n {
            for t in g.perp_set(s) {
                if rel.equiv(p, g.sum(s, t).unwrap())
                    && !g.down(p).iter().any(|e| rel.equiv(e, s) && rel.equiv(g.diff(p, e).unwrap(), t))
                {
                    sk3d = Some(vec![p, s, t]);
                    break 'sk3d;
                }
            }
        }
    }

    let mut sk3e = None;
    'sk3e: for e in 0..n {
        for f in g.perp_set(e) {
            let total = g.sum(e, f).unwrap();
            for s in g.down(total) {
                let t = g.diff(total, s).unwrap();
                let ok = g.down(e).iter().any(|e1| {
                    let e2 = g.diff(e, e1).unwrap();
                    g.down(f).iter().any(|f1| {
                        let f2 = g.diff(f, f1).unwrap();
                        match (g.sum(e1, f1), g.sum(e2, f2)) {
                            (Some(a), Some(b)) => rel.equiv(s, a) && rel.equiv(t, b),
                            _ => false,
                        }
                    })
                });
                if !ok {
                    sk3e = Some(vec![e, f, s, t]);
                    break 'sk3e;
                }
            }
        }
    }

    let sk4a = (0..n)
        .flat_map(|e| (0..n).map(move |f| (e, f)))
        .find(|&(e, f)| !g.perp(e, f) && !rels.related(e, f))
        .map(|(e, f)| vec![e, f]);

    let sk4b = (0..n)
        .flat_map(|e| (0..n).map(move |f| (e, f)))
        .find(|&(e, f)| {
            !g.leq(e, f)
                && !g.down(e).without(0).iter().any(|e1| {
                    rel.class_of(e1).iter().any(|d1| g.perp(d1, f))
                })
        })
        .map(|(e, f)| vec![e, f]);

    SkReport {
        sk1: AxiomVerdict::from_witness(sk1),
        sk2: AxiomVerdict::from_witness(sk2),
        sk3d: AxiomVerdict::from_witness(sk3d),
        sk3e: AxiomVerdict::from_witness(sk3e),
        sk4a: AxiomVerdict::from_witness(sk4a),
        sk4b: AxiomVerdict::from_witness(sk4b),
        sk4a_prime: None,
        der_forms_agree: None,
    }
}

/// `π` splits the relation: no nonzero element of `π(E)` is equivalent to
/// an element of `π′(E)`.
pub fn splits(g: &GeaTable, rel: &EquivRel, pi: &ExoMap) -> bool {
    let fixed = pi.summand();
    let killed: ElemSet = (0..g.len()).filter(|&f| pi.apply(f) == 0).collect();
    fixed
        .without(0)
        .iter()
        .all(|e| rel.class_of(e).is_disjoint(killed))
}

/// The four equivalent ways a map can split the relation: no equivalences
/// across the summands; `π(E)` closed under `∼`; `π(E)` hereditary; no
/// related pairs across the summands.
pub fn splitting_conditions(g: &GeaTable, rel: &EquivRel, rels: &Relations, pi: &ExoMap) -> [bool; 4] {
    let fixed = pi.summand();
    let killed: ElemSet = (0..g.len()).filter(|&f| pi.apply(f) == 0).collect();
    [
        splits(g, rel, pi),
        fixed.iter().all(|e| rel.class_of(e).is_subset(fixed)),
        rels.is_hereditary(fixed),
        fixed
            .iter()
            .all(|e| killed.iter().all(|f| !rels.related(e, f))),
    ]
}

/// Exocenter maps that split the relation, without further checks.
pub fn splitting_maps(g: &GeaTable, rel: &EquivRel, s: &ExoSet) -> ExoSet {
    ExoSet::new(s.iter().filter(|m| splits(g, rel, m)).cloned().collect())
}

/// The splitting set of an SK-congruence, with the four splitting
/// conditions cross-checked and closure as a boolean subalgebra verified.
pub fn sigma_sim(g: &GeaTable, rel: &EquivRel, s: &ExoSet) -> Result<ExoSet> {
    let rels = Relations::new(g, rel);
    for pi in s.iter() {
        let c = splitting_conditions(g, rel, &rels, pi);
        if c.iter().any(|&x| x != c[0]) {
            return Err(CoreError::InternalInvariant(format!(
                "splitting conditions disagree at {}: {c:?}",
                pi.display(g)
            )));
        }
    }
    let sigma = splitting_maps(g, rel, s);
    if !sigma.is_boolean_algebra(g) {
        return Err(CoreError::InternalInvariant("splitting maps are not a boolean subalgebra".into()));
    }
    Ok(sigma)
}

/// `η_e` is the meet of the splitting maps fixing `e`.
pub fn induced_hull(g: &GeaTable, s: &ExoSet, sigma: &ExoSet) -> Result<HullSystem> {
    let n = g.len();
    let h = HullSystem::from_maps(
        (0..n)
            .map(|e| ExoSet::meet_all(n, sigma.iter().filter(|m| m.apply(e) == e)))
            .collect(),
    );
    let verdict = check_hull_system(g, s, h.maps())?;
    if !verdict.holds {
        return Err(CoreError::InternalInvariant(format!("induced hull fails {:?}", verdict.witness)));
    }
    if h.maps().iter().any(|m| !sigma.contains(m)) {
        return Err(CoreError::InternalInvariant("induced hull leaves the splitting set".into()));
    }
    for pi in sigma.iter() {
        for e in 0..n {
            if (pi.apply(e) == 0) != pi.disjoint(h.eta(e)) {
                return Err(CoreError::InternalInvariant(format!(
                    "{} kills {} but meets its hull",
                    pi.display(g),
                    g.name(e)
                )));
            }
        }
    }
    Ok(h)
}

/// Adds the separation axiom to an SK report, in both of its forms.
pub fn check_der(g: &GeaTable, rel: &EquivRel, s: &ExoSet) -> Result<SkReport> {
    let mut report = check_sk(g, rel);
    if let Some((tag, _)) = report.first_failure() {
        return Err(CoreError::NotSkCongruence(tag.to_string()));
    }
    let sigma = splitting_maps(g, rel, s);
    let hull = induced_hull(g, s, &sigma)?;
    let rels = Relations::new(g, rel);
    let n = g.len();
    let pairs = || (0..n).flat_map(|e| (0..n).map(move |f| (e, f)));
    let separated = |e: usize, f: usize| sigma.iter().any(|m| m.apply(e) == e && m.apply(f) == 0);
    let witness = pairs()
        .find(|&(e, f)| !rels.related(e, f) && !separated(e, f))
        .map(|(e, f)| vec![e, f]);
    let hull_form = pairs().all(|(e, f)| rels.related(e, f) || hull.eta(e).disjoint(hull.eta(f)));
    report.der_forms_agree = Some(hull_form == witness.is_none());
    report.sk4a_prime = Some(AxiomVerdict::from_witness(witness));
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDecomposition {
    pub p1: usize,
    pub p2: usize,
    pub q1: usize,
    pub q2: usize,
}

/// Splits `p = p1 ⊕ p2`, `q = q1 ⊕ q2` with `p1 ∼ q1` and `p2`, `q2`
/// unrelated, by greedily accumulating the first equivalent pair of nonzero
/// pieces of what remains.
pub fn decompose_pair(g: &GeaTable, rel: &EquivRel, p: usize, q: usize) -> Result<PairDecomposition> {
    let (mut p1, mut q1) = (0, 0);
    loop {
        let (rp, rq) = (g.diff(p, p1).unwrap(), g.diff(q, q1).unwrap());
        let next = g
            .down(rp)
            .without(0)
            .iter()
            .find_map(|e| g.down(rq).without(0).iter().find(|&f| rel.equiv(e, f)).map(|f| (e, f)));
        match next {
            Some((e, f)) => {
                p1 = g.sum(p1, e).unwrap();
                q1 = g.sum(q1, f).unwrap();
            }
            None => break,
        }
    }
    let d = PairDecomposition {
        p1,
        p2: g.diff(p, p1).unwrap(),
        q1,
        q2: g.diff(q, q1).unwrap(),
    };
    let rels = Relations::new(g, rel);
    if !rel.equiv(d.p1, d.q1) || rels.related(d.p2, d.q2) {
        return Err(CoreError::InternalInvariant(format!(
            "pair decomposition of ({}, {}) fails its contract",
            g.name(p),
            g.name(q)
        )));
    }
    Ok(d)
}

/// Everything derived from an SK-congruence on a model.
#[derive(Clone, Debug)]
pub struct SkContext {
    pub gea: GeaTable,
    pub exo: ExoSet,
    pub rel: EquivRel,
    pub rels: Relations,
    pub report: SkReport,
    pub sigma: ExoSet,
    pub hull: HullSystem,
}

impl SkContext {
    pub fn new(gea: GeaTable, rel: EquivRel) -> Result<Self> {
        let exo = exocenter(&gea);
        Self::with_exocenter(gea, exo, rel)
    }

    pub fn with_exocenter(gea: GeaTable, exo: ExoSet, rel: EquivRel) -> Result<Self> {
        let report = check_der(&gea, &rel, &exo)?;
        let sigma = splitting_maps(&gea, &rel, &exo);
        let hull = induced_hull(&gea, &exo, &sigma)?;
        let rels = Relations::new(&gea, &rel);
        Ok(SkContext {
            gea,
            exo,
            rel,
            rels,
            report,
            sigma,
            hull,
        })
    }

    pub fn is_der(&self) -> bool {
        self.report.is_der()
    }

    pub fn n(&self) -> usize {
        self.gea.len()
    }

    pub fn eta(&self, e: usize) -> &ExoMap {
        self.hull.eta(e)
    }

    pub fn identity(&self) -> ExoMap {
        ExoMap::identity(self.n())
    }

    pub fn zero_map(&self) -> ExoMap {
        ExoMap::zero(self.n())
    }
}

/// An element `d` with `η_d e ≾ η_d f` and `η_d′ f ≾ η_d′ e`.
pub fn comparability(ctx: &SkContext, e: usize, f: usize) -> Result<usize> {
    if !ctx.is_der() {
        return Err(CoreError::NotDer);
    }
    let d = decompose_pair(&ctx.gea, &ctx.rel, e, f)?.q2;
    let (eta, co) = (ctx.eta(d), ctx.eta(d).complement(&ctx.gea));
    if !ctx.rels.subequiv(eta.apply(e), eta.apply(f)) || !ctx.rels.subequiv(co.apply(f), co.apply(e)) {
        return Err(CoreError::InternalInvariant(format!(
            "comparability fails for ({}, {})",
            ctx.gea.name(e),
            ctx.gea.name(f)
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b4, c3, t3};
    use crate::hull::{cover_system, indiscrete};

    fn merged(g: &GeaTable, names: &[&str]) -> EquivRel {
        build_equiv_named(g, &[names.to_vec()]).unwrap()
    }

    #[test]
    fn relation_construction() {
        let g = b4();
        let r = merged(&g, &["a", "b"]);
        assert!(r.equiv(1, 2) && !r.equiv(1, 3));
        let s = ElemSet::from_iter([1, 2]);
        assert!(matches!(build_equiv(&g, &[s, ElemSet::from_iter([2, 3])]), Err(CoreError::OverlappingClasses(_))));
        assert!(matches!(build_equiv(&g, &[ElemSet::singleton(7)]), Err(CoreError::UnknownElement(_))));
        assert_eq!(all_zero_isolating_relations(4).len(), 5);
    }

    #[test]
    fn sk_examples() {
        let g = b4();
        let r = check_sk(&g, &merged(&g, &["a", "b"]));
        assert!(r.is_sk());
        let t = t3();
        let r = check_sk(&t, &EquivRel::equality(3));
        assert_eq!(r.sk4a.witness, Some(vec![1, 2]));
        assert_eq!(r.first_failure().unwrap().0, "SK4a");
        let c = c3();
        let r = check_sk(&c, &merged(&c, &["1", "2"]));
        assert_eq!(r.sk3d.witness, Some(vec![1, 1, 1]));
    }

    #[test]
    fn der_examples() {
        for (g, rel) in [(b4(), EquivRel::equality(4)), (b4(), merged(&b4(), &["a", "b"])), (c3(), EquivRel::equality(3))] {
            let s = exocenter(&g);
            let r = check_der(&g, &rel, &s).unwrap();
            assert!(r.is_der() && r.der_forms_agree == Some(true));
        }
        let c = c3();
        let err = check_der(&c, &merged(&c, &["1", "2"]), &exocenter(&c)).unwrap_err();
        assert_eq!(err, CoreError::NotSkCongruence("SK3d".into()));
    }

    #[test]
    fn relation_query_examples() {
        let c = c3();
        let q = Relations::new(&c, &EquivRel::equality(3));
        assert!(q.subequiv(1, 2) && !q.subequiv(2, 1));
        let g = b4();
        let q = Relations::new(&g, &merged(&g, &["a", "b"]));
        assert!(!q.is_hereditary(ElemSet::from_iter([0, 1])));
        assert!(q.related(1, 2));
    }

    #[test]
    fn splitting_examples() {
        let g = b4();
        let s = exocenter(&g);
        assert_eq!(sigma_sim(&g, &EquivRel::equality(4), &s).unwrap().len(), 4);
        let sigma = sigma_sim(&g, &merged(&g, &["a", "b"]), &s).unwrap();
        assert_eq!(sigma.maps(), &[ExoMap::zero(4), ExoMap::identity(4)]);
        assert_eq!(induced_hull(&g, &s, &sigma).unwrap(), indiscrete(&g));
        let eq_sigma = sigma_sim(&g, &EquivRel::equality(4), &s).unwrap();
        assert_eq!(induced_hull(&g, &s, &eq_sigma).unwrap(), cover_system(&g, &s));
    }

    #[test]
    fn pair_decomposition_examples() {
        let c = c3();
        let d = decompose_pair(&c, &EquivRel::equality(3), 1, 2).unwrap();
        assert_eq!((d.p1, d.p2, d.q1, d.q2), (1, 0, 1, 1));
        let g = b4();
        let d = decompose_pair(&g, &merged(&g, &["a", "b"]), 1, 2).unwrap();
        assert_eq!((d.p1, d.p2, d.q1, d.q2), (1, 0, 2, 0));
    }

    #[test]
    fn comparability_examples() {
        let ctx = SkContext::new(c3(), EquivRel::equality(3)).unwrap();
        let d = comparability(&ctx, 1, 2).unwrap();
        assert!(ctx.eta(d).is_identity());
        let g = b4();
        let ctx = SkContext::new(g.clone(), merged(&g, &["a", "b"])).unwrap();
        let d = comparability(&ctx, 1, 3).unwrap();
        assert!(ctx.eta(d).is_identity());
    }
}
