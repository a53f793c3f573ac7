//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use gea_catalog::suite::{registry, SuiteStatus};
use gea_catalog::{enumerate_geas, enumerate_relations, run_theorem_suite, SuiteOptions};
use gea_cli::run_command;
use gea_core::dimension::{analyze, decompose_types, restrict_summand};
use gea_core::exocenter::{center, exocenter, exocenter_brute_force};
use gea_core::fixtures::{b4, c3, t3};
use gea_core::{ExoMap, GeaTable, SkContext};
use serde_json::Value;

/// Wall-clock budget for the exocenter oracle over all models with at most
/// four elements.
const ORACLE_BUDGET: Duration = Duration::from_secs(10);
/// Wall-clock budget for the full property suite at five elements.
const SUITE_BUDGET: Duration = Duration::from_secs(300);
const ORACLE_MAX_N: usize = 4;
const SUITE_MAX_N: usize = 5;
const NEGATIVE_CONTROL_MAX_N: usize = 4;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exocenter_oracle() -> Outcome {
    let start = Instant::now();
    let models = enumerate_geas(ORACLE_MAX_N).map_err(|e| e.to_string())?;
    let mut maps = 0;
    for m in &models {
        let fast = exocenter(&m.gea);
        let slow = exocenter_brute_force(&m.gea);
        ensure(fast == slow, format!("model {} disagrees", m.key))?;
        maps += fast.len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < ORACLE_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("{} models, {maps} maps, {elapsed:.2?}", models.len()))
}

fn center_names(g: &GeaTable) -> Vec<String> {
    let c = center(g, &exocenter(g)).unwrap();
    c.iter().map(|(e, _)| g.name(*e).to_string()).collect()
}

fn sk_der_counts(g: &GeaTable) -> (usize, usize) {
    let recs = enumerate_relations(g).unwrap();
    (recs.iter().filter(|r| r.sk).count(), recs.iter().filter(|r| r.der).count())
}

fn fixture_values() -> Outcome {
    let (t, c, b) = (t3(), c3(), b4());
    let sizes = [exocenter(&t).len(), exocenter(&b).len(), exocenter(&c).len()];
    ensure(sizes == [2, 4, 2], format!("exocenter sizes {sizes:?}"))?;
    for g in [&t, &b, &c] {
        ensure(exocenter_brute_force(g) == exocenter(g), "exocenter oracle disagrees on a fixture")?;
    }
    ensure(center_names(&c) == ["0", "2"], format!("center of C3 {:?}", center_names(&c)))?;
    ensure(center_names(&t) == ["0"], format!("center of T3 {:?}", center_names(&t)))?;
    let counts = [sk_der_counts(&t), sk_der_counts(&c), sk_der_counts(&b)];
    ensure(counts == [(0, 0), (1, 1), (2, 2)], format!("SK/DER counts {counts:?}"))?;
    let per_size: Vec<usize> = (1..=3)
        .map(|n| enumerate_geas(n).unwrap().iter().filter(|m| m.n() == n).count())
        .collect();
    ensure(per_size == [1, 1, 2], format!("models per size {per_size:?}"))?;
    // The fixture files describe the same models.
    for (file, g) in [("t3.gea", &t), ("c3.gea", &c), ("b4.gea", &b)] {
        let text = std::fs::read_to_string(fixture(file)).unwrap();
        let parsed = gea_cli::parse_gea_file(&text).unwrap().build().unwrap();
        ensure(
            gea_core::canon::canonical_key(&parsed) == gea_core::canon::canonical_key(g),
            format!("{file} differs from the library fixture"),
        )?;
    }
    Ok("exocenter sizes, centers, congruence counts and model counts match".into())
}

/// Every disjoint triple in the splitting set that joins to 1 and whose
/// summands are of types I, II and III.
fn typed_triples(ctx: &SkContext) -> Vec<[ExoMap; 3]> {
    let g = &ctx.gea;
    let types: Vec<_> = ctx
        .sigma
        .iter()
        .map(|pi| analyze(&restrict_summand(ctx, pi).unwrap().ctx).unwrap().types)
        .collect();
    let maps: Vec<&ExoMap> = ctx.sigma.iter().collect();
    let mut out = Vec::new();
    for (i, p) in maps.iter().enumerate() {
        for (j, q) in maps.iter().enumerate() {
            for (k, r) in maps.iter().enumerate() {
                let disjoint = p.disjoint(q) && p.disjoint(r) && q.disjoint(r);
                let total = p.join(q, g).join(r, g).is_identity();
                if disjoint && total && types[i].type_i && types[j].type_ii && types[k].type_iii {
                    out.push([(*p).clone(), (*q).clone(), (*r).clone()]);
                }
            }
        }
    }
    out
}

fn decomposition_goldens() -> Outcome {
    let b = b4();
    let merge = gea_core::congruence::build_equiv_named(&b, &[vec!["a", "b"]]).unwrap();
    let cases = [
        ("C3", c3(), gea_core::EquivRel::equality(3), "2"),
        ("B4", b, merge, "1"),
    ];
    for (label, g, rel, unit) in cases {
        let ctx = SkContext::new(g.clone(), rel).unwrap();
        let d = decompose_types(&ctx).unwrap();
        ensure(d.pi_i.is_identity(), format!("{label}: type I projection is not the identity"))?;
        ensure(d.label() == "I_F", format!("{label}: type {}", d.label()))?;
        ensure(g.name(d.unit_i_f) == unit, format!("{label}: unit {}", g.name(d.unit_i_f)))?;
        ensure(d.checks.all(), format!("{label}: checks {:?}", d.checks))?;
        let triples = typed_triples(&ctx);
        let formula = [d.pi_i.clone(), d.pi_ii.clone(), d.pi_iii.clone()];
        ensure(triples == [formula], format!("{label}: {} typed triples", triples.len()))?;
    }
    let exec = run_command(["gea", "--json", "decompose", &fixture("b4.gea"), "--relation", "merge"]);
    let v: Value = serde_json::from_str(&exec.stdout).map_err(|e| e.to_string())?;
    ensure(exec.code == 0 && v["results"]["type"] == "I_F" && v["results"]["unit"] == "1", "CLI report differs")?;
    Ok("C3 and B4 are I_F with units 2 and 1, formula triple unique".into())
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let r = run_theorem_suite(&SuiteOptions::new(SUITE_MAX_N)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let failing: Vec<&str> = r.properties.iter().filter(|p| p.violations > 0).map(|p| p.name.as_str()).collect();
    ensure(failing.is_empty(), format!("violations in {failing:?}"))?;
    ensure(r.properties.len() == registry().len(), "not every property ran")?;
    ensure(elapsed < SUITE_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} properties over {} models and {} SK-congruences, {elapsed:.2?}",
        r.properties.len(),
        r.models,
        r.sk_congruences
    ))
}

fn type_one_review() -> Outcome {
    let r = run_theorem_suite(&SuiteOptions::new(SUITE_MAX_N)).map_err(|e| e.to_string())?;
    ensure(r.status != SuiteStatus::Review, format!("review items {:?}", r.review))?;
    for name in ["type-decomposition", "summand-type-criteria", "type-criteria"] {
        let p = r.property(name).ok_or(format!("{name} missing"))?;
        ensure(p.instances == r.ders && p.violations == 0, format!("{name} ran on {} of {}", p.instances, r.ders))?;
    }
    let labels: Vec<&String> = r.type_distribution.keys().collect();
    ensure(
        labels.iter().all(|l| l.starts_with("I_") || *l == "vacuous"),
        format!("labels {labels:?}"),
    )?;
    Ok(format!("{} dimension equivalence relations, types {:?}", r.ders, r.type_distribution))
}

fn determinism() -> Outcome {
    let n = SUITE_MAX_N.to_string();
    let run = |jobs: &str| run_command(["gea", "--json", "verify", "--max-size", &n, "--jobs", jobs]);
    let (a, b, serial) = (run("4"), run("4"), run("1"));
    ensure(a.code == 0, format!("verify exited with {}", a.code))?;
    ensure(a.stdout == b.stdout, "two runs differ")?;
    ensure(a.stdout == serial.stdout, "serial and parallel runs differ")?;
    Ok(format!("{} bytes, identical across runs and worker counts", a.stdout.len()))
}

fn negative_control() -> Outcome {
    let mut missed = Vec::new();
    let props = registry();
    for p in &props {
        let mut opts = SuiteOptions::new(NEGATIVE_CONTROL_MAX_N);
        opts.properties = Some(vec![p.name.to_string()]);
        opts.invert = Some(p.name.to_string());
        let r = run_theorem_suite(&opts).map_err(|e| e.to_string())?;
        if r.total_violations == 0 {
            missed.push(p.name);
        }
    }
    ensure(missed.is_empty(), format!("no violation when inverting {missed:?}"))?;
    Ok(format!("all {} inverted properties report violations", props.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("exocenter-oracle", exocenter_oracle),
        ("fixture-values", fixture_values),
        ("decomposition-goldens", decomposition_goldens),
        ("property-suite", property_suite),
        ("type-one-review", type_one_review),
        ("determinism", determinism),
        ("negative-control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
