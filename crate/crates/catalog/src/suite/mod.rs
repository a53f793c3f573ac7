//! The property suite: every registered property evaluated on every
//! cataloged model, hull system and SK-congruence.

mod der;
mod model;
mod sk;

use std::collections::BTreeMap;

use gea_core::congruence::{all_zero_isolating_relations, check_sk};
use gea_core::dimension::{analyze, decompose_types, restrict_summand, DgeaAnalysis, Decomposition, Summand, TypeVerdict};
use gea_core::exocenter::exocenter;
use gea_core::hull::all_hull_systems;
use gea_core::{EquivRel, ExoMap, ExoSet, GeaTable, HullSystem, SkContext};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{enumerate_geas_with, CatalogModel, DEFAULT_LIMIT};
use crate::error::{CatalogError, Result};

/// Outcome of one property on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Holds,
    /// The hypotheses do not apply to this instance.
    Vacuous,
    Fails(String),
}

impl Check {
    fn from_failure(w: Option<String>) -> Self {
        w.map_or(Check::Holds, Check::Fails)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Once per model.
    Model,
    /// Once per hull system of a model.
    Hull,
    /// Once per SK-congruence.
    Sk,
    /// Once per dimension equivalence relation.
    Der,
}

#[derive(Clone, Copy)]
enum Evaluator {
    Model(fn(&ModelCx) -> Check),
    Hull(fn(&ModelCx, &HullSystem) -> Check),
    Sk(fn(&SkCx) -> Check),
    Der(fn(&DerCx) -> Check),
}

#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub summary: &'static str,
    eval: Evaluator,
}

impl Property {
    pub fn scope(&self) -> Scope {
        match self.eval {
            Evaluator::Model(_) => Scope::Model,
            Evaluator::Hull(_) => Scope::Hull,
            Evaluator::Sk(_) => Scope::Sk,
            Evaluator::Der(_) => Scope::Der,
        }
    }
}

/// Property that records failures to build an SK context.
const SK_CONTEXT: &str = "sk-context-consistency";
/// Property that records failures of the type analysis.
const DER_ANALYSIS: &str = "der-analysis-consistency";

/// All registered properties, in report order.
pub fn registry() -> Vec<Property> {
    let mut out = model::properties();
    out.extend(sk::properties());
    out.extend(der::properties());
    out
}

pub struct ModelCx {
    pub key: String,
    pub g: GeaTable,
    pub exo: ExoSet,
    pub hulls: Vec<HullSystem>,
}

pub struct SkCx<'a> {
    pub model: &'a ModelCx,
    pub ctx: SkContext,
}

/// A summand `π(E)` for `π` in the splitting set, with its own analysis.
pub struct SummandCx {
    pub pi: ExoMap,
    pub summand: Summand,
    pub analysis: DgeaAnalysis,
}

impl SummandCx {
    /// Whether the parent element `p` is faithful inside the summand.
    pub fn faithful(&self, p: usize) -> bool {
        self.summand.project(p).is_some_and(|i| self.summand.ctx.eta(i).is_identity())
    }
}

pub struct DerCx<'a> {
    pub model: &'a ModelCx,
    pub ctx: &'a SkContext,
    pub a: DgeaAnalysis,
    pub d: Decomposition,
    pub summands: Vec<SummandCx>,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub max_n: usize,
    pub limit: usize,
    pub jobs: Option<usize>,
    /// Restrict to these property names.
    pub properties: Option<Vec<String>>,
    /// Negate this property, as a check that the suite can fail.
    pub invert: Option<String>,
    /// Witnesses kept per property.
    pub max_witnesses: usize,
}

impl SuiteOptions {
    pub fn new(max_n: usize) -> Self {
        SuiteOptions {
            max_n,
            limit: DEFAULT_LIMIT,
            jobs: None,
            properties: None,
            invert: None,
            max_witnesses: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hull: Option<String>,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub scope: Scope,
    pub instances: usize,
    pub vacuous: usize,
    pub violations: usize,
    pub witnesses: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReviewItem {
    pub model: String,
    pub relation: String,
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteStatus {
    Ok,
    Violations,
    /// No violations, but a model needs a human look.
    Review,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub max_n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverted: Option<String>,
    pub models: usize,
    pub hull_systems: usize,
    pub relations: usize,
    pub sk_congruences: usize,
    pub ders: usize,
    pub properties: Vec<PropertyResult>,
    /// Decomposition labels of all DER instances.
    pub type_distribution: BTreeMap<String, usize>,
    /// DER instances whose decomposition is not purely type I.
    pub review: Vec<ReviewItem>,
    pub total_violations: usize,
    pub status: SuiteStatus,
}

impl SuiteReport {
    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Runs the selected properties over every model with at most
/// `opts.max_n` elements.
pub fn run_theorem_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let all = registry();
    let selected: Vec<Property> = match &opts.properties {
        None => all,
        Some(names) => {
            let mut out = Vec::new();
            for name in names {
                let p = all
                    .iter()
                    .find(|p| p.name == name)
                    .ok_or_else(|| CatalogError::UnknownProperty(name.clone()))?;
                if !out.iter().any(|q: &Property| q.name == p.name) {
                    out.push(*p);
                }
            }
            out
        }
    };
    if let Some(inv) = &opts.invert {
        if !selected.iter().any(|p| p.name == inv) {
            return Err(CatalogError::UnknownProperty(inv.clone()));
        }
    }
    let job = || -> Result<SuiteReport> {
        let models = enumerate_geas_with(opts.max_n, opts.limit, opts.jobs)?;
        let tallies: Vec<Tally> = models.par_iter().map(|m| evaluate_model(m, &selected, opts)).collect();
        Ok(merge(opts, &selected, models.len(), tallies))
    };
    match opts.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| CatalogError::Format(e.to_string()))?
            .install(job),
        None => job(),
    }
}

#[derive(Default)]
struct Counts {
    instances: usize,
    vacuous: usize,
    violations: usize,
    witnesses: Vec<Violation>,
}

#[derive(Default)]
struct Tally {
    counts: Vec<Counts>,
    hull_systems: usize,
    relations: usize,
    sk: usize,
    der: usize,
    labels: Vec<String>,
    review: Vec<ReviewItem>,
}

struct Where<'a> {
    model: &'a str,
    relation: Option<String>,
    hull: Option<String>,
}

impl Tally {
    fn record(&mut self, idx: usize, check: Check, inverted: bool, at: &Where, cap: usize) {
        let check = match (check, inverted) {
            (Check::Holds, true) => Check::Fails("property held but was inverted".into()),
            (Check::Fails(_), true) => Check::Holds,
            (c, _) => c,
        };
        let c = &mut self.counts[idx];
        match check {
            Check::Holds => c.instances += 1,
            Check::Vacuous => c.vacuous += 1,
            Check::Fails(witness) => {
                c.instances += 1;
                c.violations += 1;
                if c.witnesses.len() < cap {
                    c.witnesses.push(Violation {
                        model: at.model.to_string(),
                        relation: at.relation.clone(),
                        hull: at.hull.clone(),
                        witness,
                    });
                }
            }
        }
    }
}

pub(crate) fn hull_display(g: &GeaTable, h: &HullSystem) -> String {
    let parts: Vec<String> = (0..g.len()).map(|e| format!("{}:{}", g.name(e), h.eta(e).display(g))).collect();
    parts.join(" ")
}

fn evaluate_model(m: &CatalogModel, props: &[Property], opts: &SuiteOptions) -> Tally {
    let g = m.gea.clone();
    let exo = exocenter(&g);
    let hulls = all_hull_systems(&g, &exo);
    let mcx = ModelCx {
        key: m.key.clone(),
        g,
        exo,
        hulls,
    };
    let mut tally = Tally {
        counts: props.iter().map(|_| Counts::default()).collect(),
        hull_systems: mcx.hulls.len(),
        ..Tally::default()
    };
    let cap = opts.max_witnesses;
    let inverted = |p: &Property| opts.invert.as_deref() == Some(p.name);
    let model_at = Where {
        model: &mcx.key,
        relation: None,
        hull: None,
    };

    for (i, p) in props.iter().enumerate() {
        match p.eval {
            Evaluator::Model(f) => tally.record(i, f(&mcx), inverted(p), &model_at, cap),
            Evaluator::Hull(f) => {
                for h in &mcx.hulls {
                    let at = Where {
                        model: &mcx.key,
                        relation: None,
                        hull: Some(hull_display(&mcx.g, h)),
                    };
                    tally.record(i, f(&mcx, h), inverted(p), &at, cap);
                }
            }
            _ => {}
        }
    }

    let needs_sk = props.iter().any(|p| matches!(p.scope(), Scope::Sk | Scope::Der));
    let relations = all_zero_isolating_relations(mcx.g.len());
    tally.relations = relations.len();
    if !needs_sk {
        return tally;
    }
    for rel in relations {
        if !check_sk(&mcx.g, &rel).is_sk() {
            continue;
        }
        tally.sk += 1;
        evaluate_relation(&mcx, rel, props, opts, &mut tally);
    }
    tally
}

fn evaluate_relation(mcx: &ModelCx, rel: EquivRel, props: &[Property], opts: &SuiteOptions, tally: &mut Tally) {
    let cap = opts.max_witnesses;
    let inverted = |p: &Property| opts.invert.as_deref() == Some(p.name);
    let at = Where {
        model: &mcx.key,
        relation: Some(rel.display(&mcx.g)),
        hull: None,
    };
    let position = |name: &str| props.iter().position(|p| p.name == name);
    let ctx = match SkContext::with_exocenter(mcx.g.clone(), mcx.exo.clone(), rel) {
        Ok(ctx) => ctx,
        Err(e) => {
            if let Some(i) = position(SK_CONTEXT) {
                tally.record(i, Check::Fails(e.to_string()), false, &at, cap);
            }
            return;
        }
    };
    let scx = SkCx { model: mcx, ctx };
    for (i, p) in props.iter().enumerate() {
        if let Evaluator::Sk(f) = p.eval {
            tally.record(i, f(&scx), inverted(p), &at, cap);
        }
    }
    if !scx.ctx.is_der() {
        return;
    }
    tally.der += 1;
    let dcx = match der_context(mcx, &scx.ctx) {
        Ok(d) => d,
        Err(e) => {
            if let Some(i) = position(DER_ANALYSIS) {
                tally.record(i, Check::Fails(e.to_string()), false, &at, cap);
            }
            return;
        }
    };
    let label = dcx.d.label();
    if !matches!(dcx.d.verdict, TypeVerdict::I | TypeVerdict::Vacuous) {
        tally.review.push(ReviewItem {
            model: mcx.key.clone(),
            relation: at.relation.clone().unwrap_or_default(),
            label: label.clone(),
        });
    }
    tally.labels.push(label);
    for (i, p) in props.iter().enumerate() {
        if let Evaluator::Der(f) = p.eval {
            tally.record(i, f(&dcx), inverted(p), &at, cap);
        }
    }
}

fn der_context<'a>(mcx: &'a ModelCx, ctx: &'a SkContext) -> gea_core::Result<DerCx<'a>> {
    let a = analyze(ctx)?;
    let d = decompose_types(ctx)?;
    let summands = ctx
        .sigma
        .iter()
        .map(|pi| {
            let summand = restrict_summand(ctx, pi)?;
            let analysis = analyze(&summand.ctx)?;
            Ok(SummandCx {
                pi: pi.clone(),
                summand,
                analysis,
            })
        })
        .collect::<gea_core::Result<_>>()?;
    Ok(DerCx {
        model: mcx,
        ctx,
        a,
        d,
        summands,
    })
}

fn merge(opts: &SuiteOptions, props: &[Property], models: usize, tallies: Vec<Tally>) -> SuiteReport {
    let mut results: Vec<PropertyResult> = props
        .iter()
        .map(|p| PropertyResult {
            name: p.name.to_string(),
            scope: p.scope(),
            instances: 0,
            vacuous: 0,
            violations: 0,
            witnesses: Vec::new(),
        })
        .collect();
    let mut report = SuiteReport {
        max_n: opts.max_n,
        inverted: opts.invert.clone(),
        models,
        hull_systems: 0,
        relations: 0,
        sk_congruences: 0,
        ders: 0,
        properties: Vec::new(),
        type_distribution: BTreeMap::new(),
        review: Vec::new(),
        total_violations: 0,
        status: SuiteStatus::Ok,
    };
    for t in tallies {
        report.hull_systems += t.hull_systems;
        report.relations += t.relations;
        report.sk_congruences += t.sk;
        report.ders += t.der;
        for label in t.labels {
            *report.type_distribution.entry(label).or_insert(0) += 1;
        }
        report.review.extend(t.review);
        for (r, c) in results.iter_mut().zip(t.counts) {
            r.instances += c.instances;
            r.vacuous += c.vacuous;
            r.violations += c.violations;
            let room = opts.max_witnesses.saturating_sub(r.witnesses.len());
            r.witnesses.extend(c.witnesses.into_iter().take(room));
        }
    }
    report.total_violations = results.iter().map(|r| r.violations).sum();
    report.properties = results;
    report.status = if report.total_violations > 0 {
        SuiteStatus::Violations
    } else if !report.review.is_empty() {
        SuiteStatus::Review
    } else {
        SuiteStatus::Ok
    };
    report
}

// Shared helpers for the property modules.

fn names(g: &GeaTable, elems: &[usize]) -> String {
    format!("({})", g.names_of(elems).join(", "))
}

fn set_str(g: &GeaTable, s: gea_core::ElemSet) -> String {
    format!("{{{}}}", g.set_names(s).join(", "))
}

/// Fails with the first element of `items` that violates `ok`.
fn all_of<T, I, F, W>(items: I, mut ok: F, mut witness: W) -> Check
where
    I: IntoIterator<Item = T>,
    F: FnMut(&T) -> bool,
    W: FnMut(&T) -> String,
{
    for x in items {
        if !ok(&x) {
            return Check::Fails(witness(&x));
        }
    }
    Check::Holds
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |e| (0..n).map(move |f| (e, f)))
}

fn all_equal<const N: usize>(v: &[bool; N]) -> bool {
    v.iter().all(|&x| x == v[0])
}

#[cfg(test)]
mod tests;
