//! One function per subcommand. Each returns an [`Outcome`] holding the
//! machine report, a human rendering and whether something failed.

use std::fmt::Write as _;
use std::path::Path;

use gea_catalog::persist::write_catalog;
use gea_catalog::suite::{registry, SuiteStatus};
use gea_catalog::{run_theorem_suite, search_counterexample, SearchOutcome, SuiteOptions};
use gea_core::congruence::{check_der, check_sk, sigma_sim};
use gea_core::dimension::{analyze, decompose_types, simple_conditions};
use gea_core::exocenter::{center, cogea_check, exocenter, exocenter_brute_force};
use gea_core::hull::{all_hull_systems, check_hull_system, classify_eta, cover_system, is_divisible};
use gea_core::{CoreError, ElemSet, EquivRel, ExoMap, GeaTable, HullSystem, SkContext, SkReport};
use serde_json::{json, Map, Value};

use crate::document::{parse_gea_file, GeaDocument};
use crate::error::{CliError, Result};

/// Largest model for which `exocenter` also runs the brute-force oracle.
const BRUTE_FORCE_MAX: usize = 6;
/// Largest exocenter for which `hull` counts every hull system.
const HULL_COUNT_MAX_EXO: usize = 16;

pub struct Outcome {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub witnesses: Vec<Value>,
    pub text: String,
    pub violation: bool,
}

impl Outcome {
    fn new(command: &'static str, inputs: Value) -> Self {
        Outcome {
            command,
            inputs,
            results: Value::Null,
            witnesses: Vec::new(),
            text: String::new(),
            violation: false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "witnesses": self.witnesses,
        })
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn names(g: &GeaTable, s: ElemSet) -> Vec<String> {
    g.set_names(s)
}

fn names_of(g: &GeaTable, elems: &[usize]) -> Vec<String> {
    g.names_of(elems)
}

/// Exocenter maps are reported by their summands `π(E)`.
fn summand(g: &GeaTable, m: &ExoMap) -> Value {
    json!(names(g, m.summand()))
}

fn brace(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn classes(g: &GeaTable, rel: &EquivRel) -> Vec<Vec<String>> {
    rel.classes().into_iter().map(|c| names(g, c)).collect()
}

fn load(path: &Path) -> Result<GeaDocument> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_gea_file(&text)
}

fn load_model(path: &Path) -> Result<(GeaDocument, GeaTable)> {
    let doc = load(path)?;
    let g = doc.build()?;
    Ok((doc, g))
}

fn file_inputs(path: &Path, relation: Option<&str>) -> Value {
    let mut m = Map::new();
    m.insert("file".into(), json!(path.display().to_string()));
    if let Some(r) = relation {
        m.insert("relation".into(), json!(r));
    }
    Value::Object(m)
}

pub fn check(path: &Path) -> Result<Outcome> {
    let mut out = Outcome::new("check", file_inputs(path, None));
    let doc = load(path)?;
    let g = match doc.build() {
        Ok(g) => g,
        Err(CliError::Core(CoreError::AxiomViolation { axiom, witness })) => {
            out.violation = true;
            out.results = json!({ "axioms_hold": false, "failed_axiom": axiom.tag() });
            out.witnesses.push(json!({ "axiom": axiom.tag(), "elements": witness }));
            out.line(format!("axiom {axiom} fails at ({})", witness.join(", ")));
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    let flags = g.structure_flags();
    let unit = flags.is_ea.map(|u| g.name(u).to_string());
    let elements: Vec<Value> = (0..g.len())
        .map(|p| {
            let e = g.element_predicates(p);
            json!({
                "element": g.name(p),
                "principal": e.principal,
                "sharp": e.sharp,
                "atom": e.atom,
                "interval_is_effect_algebra": e.has_top_of_interval,
            })
        })
        .collect();
    out.results = json!({
        "axioms_hold": true,
        "n": g.len(),
        "elements": g.names(),
        "zero": g.name(0),
        "atoms": names_of(&g, &g.atoms()),
        "maximal": names_of(&g, &g.maximal()),
        "structure": {
            "directed": flags.directed,
            "orthogonally_ordered": flags.orthogonally_ordered,
            "effect_algebra_unit": unit,
            "lattice": flags.lattice,
            "archimedean": flags.archimedean,
            "dedekind_orthocomplete": flags.dedekind_orthocomplete,
            "orthocomplete": flags.orthocomplete,
        },
        "element_predicates": elements,
    });
    out.line(format!("GEA with {} elements: axioms hold", g.len()));
    out.line(format!("atoms {}", brace(&names_of(&g, &g.atoms()))));
    out.line(format!("maximal {}", brace(&names_of(&g, &g.maximal()))));
    match &unit {
        Some(u) => out.line(format!("effect algebra with unit {u}")),
        None => out.line("not an effect algebra"),
    }
    out.line(format!(
        "directed {}, orthogonally ordered {}, lattice {}, archimedean {}",
        flags.directed, flags.orthogonally_ordered, flags.lattice, flags.archimedean
    ));
    let principal: Vec<String> = (0..g.len()).filter(|&p| g.is_principal(p)).map(|p| g.name(p).to_string()).collect();
    let sharp: Vec<String> = (0..g.len()).filter(|&p| g.is_sharp(p)).map(|p| g.name(p).to_string()).collect();
    out.line(format!("principal {}", brace(&principal)));
    out.line(format!("sharp {}", brace(&sharp)));
    Ok(out)
}

pub fn exocenter_cmd(path: &Path) -> Result<Outcome> {
    let mut out = Outcome::new("exocenter", file_inputs(path, None));
    let (_, g) = load_model(path)?;
    let exo = exocenter(&g);
    let brute = (g.len() <= BRUTE_FORCE_MAX).then(|| exocenter_brute_force(&g) == exo);
    let boolean = exo.is_boolean_algebra(&g);
    let centre = center(&g, &exo)?;
    let cogea = cogea_check(&g, &exo);
    let maps: Vec<Value> = exo.iter().map(|m| summand(&g, m)).collect();
    let center_names: Vec<&str> = centre.iter().map(|(c, _)| g.name(*c)).collect();
    out.results = json!({
        "size": exo.len(),
        "summands": maps,
        "center": center_names,
        "boolean_algebra": boolean,
        "centrally_orthocomplete": { "co1": cogea.co1, "co2": cogea.co2 },
        "cross_checks": {
            "brute_force_agrees": brute,
            "center_characterizations_agree": true,
        },
    });
    if brute == Some(false) {
        out.violation = true;
        out.witnesses.push(json!({ "check": "brute_force_agrees" }));
    }
    if !boolean {
        out.violation = true;
        out.witnesses.push(json!({ "check": "boolean_algebra" }));
    }
    out.line(format!("exocenter has {} maps", exo.len()));
    for m in exo.iter() {
        out.line(format!("  summand {}", brace(&names(&g, m.summand()))));
    }
    out.line(format!("center {}", brace(&center_names.iter().map(|s| s.to_string()).collect::<Vec<_>>())));
    out.line(format!("boolean algebra: {boolean}"));
    match brute {
        Some(b) => out.line(format!("brute-force oracle agrees: {b}")),
        None => out.line(format!("brute-force oracle skipped above {BRUTE_FORCE_MAX} elements")),
    }
    out.line(format!("centrally orthocomplete: {}", cogea.co1 && cogea.co2));
    Ok(out)
}

/// Records failing axioms of `report` as witnesses.
fn sk_witnesses(g: &GeaTable, report: &SkReport, out: &mut Outcome) {
    for (tag, v) in report.axioms() {
        if !v.holds {
            let elements = v.witness.as_deref().map(|w| names_of(g, w)).unwrap_or_default();
            out.line(format!("{tag} fails at ({})", elements.join(", ")));
            out.witnesses.push(json!({ "axiom": tag, "elements": elements }));
        }
    }
}

pub fn hull(path: &Path, relation: Option<&str>) -> Result<Outcome> {
    let mut out = Outcome::new("hull", file_inputs(path, relation));
    let (doc, g) = load_model(path)?;
    let exo = exocenter(&g);
    let (source, h): (String, HullSystem) = match relation {
        Some(name) => {
            let rel = doc.relation(&g, name)?;
            let report = check_sk(&g, &rel);
            if !report.is_sk() {
                out.violation = true;
                out.results = json!({ "relation": classes(&g, &rel), "sk": false });
                out.line(format!("relation {name} is not an SK-congruence"));
                sk_witnesses(&g, &report, &mut out);
                return Ok(out);
            }
            let ctx = SkContext::with_exocenter(g.clone(), exo.clone(), rel)?;
            (format!("relation {name}"), ctx.hull)
        }
        None => ("exocentral cover".to_string(), cover_system(&g, &exo)),
    };
    let verdict = check_hull_system(&g, &exo, h.maps())?;
    let div = is_divisible(&g, &h);
    let dyads_agree = div.agree && div.divisible == div.via_dyads;
    let mut eta = Map::new();
    for e in 0..g.len() {
        eta.insert(g.name(e).to_string(), summand(&g, h.eta(e)));
    }
    let elements: Vec<Value> = (0..g.len())
        .map(|p| {
            let c = classify_eta(&g, &h, p);
            json!({ "element": g.name(p), "monad": c.monad, "dyad": c.dyad, "faithful": c.faithful })
        })
        .collect();
    let total = (exo.len() <= HULL_COUNT_MAX_EXO).then(|| all_hull_systems(&g, &exo).len());
    let div_witness = div.witness.map(|w| names_of(&g, &w));
    out.results = json!({
        "source": source,
        "hull_axioms_hold": verdict.holds,
        "eta": eta,
        "theta": h.theta().iter().map(|m| summand(&g, m)).collect::<Vec<_>>(),
        "eta_classes": classes(&g, &h.relation()),
        "elements": elements,
        "divisible": div.divisible,
        "divisibility_witness": div_witness,
        "cross_checks": { "dyad_criterion_agrees": dyads_agree },
        "hull_systems_on_model": total,
    });
    if let Some((tag, w)) = &verdict.witness {
        out.violation = true;
        out.witnesses.push(json!({ "axiom": tag, "elements": names_of(&g, w) }));
    }
    if !dyads_agree {
        out.violation = true;
        out.witnesses.push(json!({ "check": "dyad_criterion_agrees" }));
    }
    out.line(format!("hull system from {source}: axioms hold {}", verdict.holds));
    for e in 0..g.len() {
        let c = classify_eta(&g, &h, e);
        let mut tags = Vec::new();
        if c.monad {
            tags.push("monad");
        }
        if c.dyad {
            tags.push("dyad");
        }
        if c.faithful {
            tags.push("faithful");
        }
        out.line(format!("  eta({}) = {}  {}", g.name(e), brace(&names(&g, h.eta(e).summand())), tags.join(" ")));
    }
    match &div_witness {
        None => out.line("divisible"),
        Some(w) => out.line(format!("not divisible at ({})", w.join(", "))),
    }
    out.line(format!("dyad criterion agrees: {dyads_agree}"));
    Ok(out)
}

pub fn sk(path: &Path, relation: &str) -> Result<Outcome> {
    let mut out = Outcome::new("sk", file_inputs(path, Some(relation)));
    let (doc, g) = load_model(path)?;
    let rel = doc.relation(&g, relation)?;
    let exo = exocenter(&g);
    let mut report = check_sk(&g, &rel);
    let is_sk = report.is_sk();
    let sigma = if is_sk {
        report = check_der(&g, &rel, &exo)?;
        Some(sigma_sim(&g, &rel, &exo)?)
    } else {
        None
    };
    let axioms: Vec<Value> = report
        .axioms()
        .into_iter()
        .map(|(tag, v)| {
            json!({
                "axiom": tag,
                "holds": v.holds,
                "witness": v.witness.as_deref().map(|w| names_of(&g, w)),
            })
        })
        .collect();
    out.results = json!({
        "relation": classes(&g, &rel),
        "sk": is_sk,
        "der": is_sk.then(|| report.is_der()),
        "axioms": axioms,
        "cross_checks": { "der_forms_agree": report.der_forms_agree },
        "splitting_maps": sigma.as_ref().map(|s| s.iter().map(|m| summand(&g, m)).collect::<Vec<_>>()),
    });
    out.line(format!("relation {relation} = {}", rel.display(&g)));
    sk_witnesses(&g, &report, &mut out);
    out.violation = !out.witnesses.is_empty() || report.der_forms_agree == Some(false);
    out.line(format!("SK-congruence: {is_sk}"));
    if let Some(s) = &sigma {
        out.line(format!("dimension equivalence relation: {}", report.is_der()));
        out.line(format!("{} splitting maps", s.len()));
    }
    Ok(out)
}

pub fn decompose(path: &Path, relation: &str) -> Result<Outcome> {
    let mut out = Outcome::new("decompose", file_inputs(path, Some(relation)));
    let (doc, g) = load_model(path)?;
    let rel = doc.relation(&g, relation)?;
    let exo = exocenter(&g);
    let mut report = check_sk(&g, &rel);
    if report.is_sk() {
        report = check_der(&g, &rel, &exo)?;
    }
    if !report.is_der() {
        out.violation = true;
        out.results = json!({ "relation": classes(&g, &rel), "der": false });
        out.line(format!("relation {relation} is not a dimension equivalence relation"));
        sk_witnesses(&g, &report, &mut out);
        return Ok(out);
    }
    let ctx = SkContext::with_exocenter(g.clone(), exo, rel.clone())?;
    let a = analyze(&ctx)?;
    let d = decompose_types(&ctx)?;
    let simple_agree = (0..g.len()).all(|k| {
        let c = simple_conditions(&ctx, k);
        c.iter().all(|&x| x == c[0])
    });
    let mut projections = Map::new();
    for (name, m) in d.projections() {
        projections.insert(name.to_string(), summand(&g, m));
    }
    let c = d.checks;
    out.results = json!({
        "relation": classes(&g, &rel),
        "der": true,
        "type": d.label(),
        "unit": g.name(d.unit_i_f),
        "unit_type_ii_finite": g.name(d.unit_ii_f),
        "largest_finite_invariant": g.name(d.f_tilde),
        "projections": projections,
        "eta_simple": summand(&g, &d.eta_k),
        "eta_finite": summand(&g, &d.eta_f),
        "eta_finite_invariant": summand(&g, &d.eta_ftilde),
        "simple": names(&g, a.k()),
        "finite": names(&g, a.finite),
        "finite_invariant": names(&g, a.f_tilde.set),
        "invariant": names(&g, a.invariant.gamma_sim),
        "checks": {
            "partition": c.partition,
            "in_theta": c.in_theta,
            "summand_types": c.summand_types,
            "unique": c.unique,
            "units": c.units,
            "largest_hulls": c.largest_hulls,
            "type_criteria": c.type_criteria,
        },
        "cross_checks": {
            "simple_characterizations_agree": simple_agree && a.simple.agreement,
            "invariant_characterizations_agree": a.invariant.agreement,
        },
    });
    let ok = c.all() && simple_agree && a.simple.agreement && a.invariant.agreement;
    if !ok {
        out.violation = true;
        out.witnesses.push(json!({ "check": "decomposition", "checks": format!("{c:?}") }));
    }
    out.line(format!("relation {relation} = {}", rel.display(&g)));
    out.line(format!("type {}", d.label()));
    out.line(format!("unit of the type I finite summand: {}", g.name(d.unit_i_f)));
    for (name, m) in d.projections() {
        out.line(format!("  pi_{name:8} {}", brace(&names(&g, m.summand()))));
    }
    out.line(format!("simple {}", brace(&names(&g, a.k()))));
    out.line(format!("finite {}", brace(&names(&g, a.finite))));
    out.line(format!("all checks hold: {ok}"));
    Ok(out)
}

pub fn catalog(max_n: usize, path: &Path, jobs: Option<usize>, limit: usize) -> Result<Outcome> {
    let inputs = json!({ "max_size": max_n, "out": path.display().to_string(), "limit": limit });
    let mut out = Outcome::new("catalog", inputs);
    let s = write_catalog(path, max_n, limit, jobs)?;
    out.results = json!({ "written": s.written, "skipped": s.skipped });
    out.line(format!("wrote {} entries to {} ({} already present)", s.written, path.display(), s.skipped));
    Ok(out)
}

pub struct VerifyArgs {
    pub max_n: usize,
    pub theorems: Option<Vec<String>>,
    pub jobs: Option<usize>,
    pub invert: Option<String>,
    pub limit: usize,
}

pub fn verify(args: VerifyArgs) -> Result<Outcome> {
    let inputs = json!({
        "max_size": args.max_n,
        "theorems": args.theorems,
        "invert": args.invert,
        "limit": args.limit,
    });
    let mut out = Outcome::new("verify", inputs);
    let opts = SuiteOptions {
        max_n: args.max_n,
        limit: args.limit,
        jobs: args.jobs,
        properties: args.theorems,
        invert: args.invert,
        ..SuiteOptions::new(args.max_n)
    };
    let r = run_theorem_suite(&opts)?;
    for p in &r.properties {
        for v in &p.witnesses {
            let mut w = serde_json::to_value(v).expect("violations serialize");
            w["property"] = json!(p.name);
            out.witnesses.push(w);
        }
    }
    for item in &r.review {
        out.witnesses.push(json!({ "review": item.label, "model": item.model, "relation": item.relation }));
    }
    out.violation = r.status != SuiteStatus::Ok;
    out.line(format!(
        "{} models, {} hull systems, {} SK-congruences, {} dimension equivalence relations",
        r.models, r.hull_systems, r.sk_congruences, r.ders
    ));
    for p in &r.properties {
        let mark = if p.violations == 0 { "ok  " } else { "FAIL" };
        out.line(format!(
            "{mark} {:36} {:6} instances {:6} vacuous {:4} violations",
            p.name, p.instances, p.vacuous, p.violations
        ));
        for v in &p.witnesses {
            let mut at = format!("model {}", v.model);
            if let Some(rel) = &v.relation {
                write!(at, ", relation {rel}").unwrap();
            }
            if let Some(h) = &v.hull {
                write!(at, ", hull {h}").unwrap();
            }
            out.line(format!("       {at}: {}", v.witness));
        }
    }
    let types: Vec<String> = r.type_distribution.iter().map(|(k, v)| format!("{k} x{v}")).collect();
    out.line(format!("types: {}", types.join(", ")));
    out.line(format!("status: {}", serde_json::to_value(r.status).unwrap().as_str().unwrap()));
    out.results = serde_json::to_value(&r).expect("reports serialize");
    Ok(out)
}

pub fn list_properties() -> Outcome {
    let mut out = Outcome::new("verify", json!({ "list": true }));
    let props = registry();
    out.results = json!(props
        .iter()
        .map(|p| json!({ "name": p.name, "scope": p.scope(), "summary": p.summary }))
        .collect::<Vec<_>>());
    for p in &props {
        out.line(format!("{:36} {}", p.name, p.summary));
    }
    out
}

pub fn search(property: &str, max_n: usize, jobs: Option<usize>, limit: usize) -> Result<Outcome> {
    let inputs = json!({ "property": property, "max_size": max_n, "limit": limit });
    let mut out = Outcome::new("search", inputs);
    let o = search_counterexample(property, max_n, limit, jobs)?;
    out.results = serde_json::to_value(&o).expect("outcomes serialize");
    match &o {
        SearchOutcome::Found { witness, .. } => {
            out.violation = true;
            out.witnesses.push(serde_json::to_value(witness).expect("witnesses serialize"));
            out.line(format!("found in model {} with {} elements", witness.model, witness.n));
            for (e, row) in witness.elements.iter().zip(&witness.sum_table) {
                let cells: Vec<&str> = row.iter().map(|c| c.as_deref().unwrap_or("-")).collect();
                out.line(format!("  {e:>3} | {}", cells.join(" ")));
            }
            if let Some(r) = &witness.finding.relation {
                out.line(format!("relation {r}"));
            }
            if let Some(h) = &witness.finding.hull {
                out.line(format!("hull {h}"));
            }
            out.line(witness.finding.detail.clone());
        }
        SearchOutcome::Exhausted { models_checked, .. } => {
            out.line(format!("no witness among {models_checked} models up to {max_n} elements"));
        }
    }
    Ok(out)
}
