//! Properties of a bare model and of its hull systems.

use gea_core::congruence::{check_sk, sigma_sim, Relations};
use gea_core::exocenter::{center, cogea_check, direct_summands, exocentral_cover, exocenter_brute_force};
use gea_core::hull::{check_hull_system, cover_system, hd_failure, hull_from_hd, is_divisible, is_monad, sk3e_split_eta, td_sets};
use gea_core::{ElemSet, GeaTable, HullSystem};

use super::{all_of, names, pairs, set_str, Check, Evaluator, ModelCx, Property};

/// Largest size for which the `n^n` exocenter oracle runs.
const BRUTE_FORCE_MAX: usize = 6;

pub(super) fn properties() -> Vec<Property> {
    let m = |name, summary, f| Property {
        name,
        summary,
        eval: Evaluator::Model(f),
    };
    let h = |name, summary, f| Property {
        name,
        summary,
        eval: Evaluator::Hull(f),
    };
    vec![
        m("gea-axioms", "the table satisfies the axioms and its order is a partial order", gea_axioms),
        m("principal-implies-sharp", "principal elements are sharp", principal_implies_sharp),
        m("interval-algebras", "every interval E[0,p] is an effect algebra with unit p", interval_algebras),
        m("ideal-subalgebra", "ideals are order ideals closed under sums and differences", ideal_subalgebra),
        m("exocenter-brute-force", "ideal-pair exocenter equals filtering all maps", exocenter_oracle),
        m("exocenter-boolean", "the exocenter is a boolean algebra of direct-summand maps", exocenter_boolean),
        m("summand-bijection", "exocenter maps correspond to complementary ideal pairs", summand_bijection),
        m("center-characterizations", "central elements match interval summands and are sharp", center_chars),
        m("central-orthocomplete", "finite models are centrally orthocomplete", central_orthocomplete),
        m("cover-properties", "exocentral covers form a monotone hull system", cover_properties),
        h("hull-round-trip", "a hull system is recovered from its set of hulls", hull_round_trip),
        h("hull-meet-lemma", "eta_f e and eta_e f are hull-equivalent and detect overlap", hull_meet_lemma),
        h("divisibility-dyad-criterion", "divisibility matches the dyad criterion triple by triple", dyad_criterion),
        h("no-monads-implies-divisible", "without nonzero monads a hull system is divisible", no_monads_divisible),
        h("hull-refinement-split", "e+f = s+t refines along hull equivalence", refinement_split),
        h("td-largest-hull", "type-determining sets attain a largest hull", td_largest_hull),
        h("eta-orthogonal-families", "hull-orthogonal families have sums that are suprema", eta_orthogonal),
        h("hull-congruence-divisible", "hull equivalence is SK exactly when divisible", hull_congruence_divisible),
        h("hull-splitting-round-trip", "a divisible hull system is determined by its splitting maps", hull_splitting),
    ]
}

fn gea_axioms(m: &ModelCx) -> Check {
    let g = &m.g;
    let n = g.len();
    if let Err(e) = GeaTable::from_table(g.names().to_vec(), &g.sum_table()) {
        return Check::Fails(e.to_string());
    }
    let triples = (0..n).flat_map(|a| pairs(n).map(move |(b, c)| (a, b, c)));
    let order = all_of(
        triples,
        |&(a, b, c)| g.leq(a, a) && (!(g.leq(a, b) && g.leq(b, a)) || a == b) && (!(g.leq(a, b) && g.leq(b, c)) || g.leq(a, c)),
        |&(a, b, c)| format!("order fails at {}", names(g, &[a, b, c])),
    );
    if order != Check::Holds {
        return order;
    }
    all_of(
        pairs(n),
        |&(e, f)| g.leq(e, f) == g.diff(f, e).is_some() && g.down(f).contains(e) == g.leq(e, f),
        |&(e, f)| format!("difference and order disagree at {}", names(g, &[e, f])),
    )
}

fn principal_implies_sharp(m: &ModelCx) -> Check {
    let g = &m.g;
    all_of(
        0..g.len(),
        |&p| !g.is_principal(p) || g.is_sharp(p),
        |&p| format!("{} is principal but not sharp", g.name(p)),
    )
}

fn interval_algebras(m: &ModelCx) -> Check {
    let g = &m.g;
    for p in 0..g.len() {
        let iv = match g.interval_ea(p) {
            Ok(iv) => iv,
            Err(e) => return Check::Fails(format!("interval of {}: {e}", g.name(p))),
        };
        let t = &iv.table;
        if iv.embed[iv.unit] != p || t.top() != Some(iv.unit) || iv.embed.len() != g.down(p).len() {
            return Check::Fails(format!("interval of {} has the wrong unit or carrier", g.name(p)));
        }
        for e in 0..t.len() {
            let supplements = (0..t.len()).filter(|&f| t.sum(e, f) == Some(iv.unit)).count();
            if supplements != 1 {
                return Check::Fails(format!("{} has {supplements} supplements in E[0,{}]", t.name(e), g.name(p)));
            }
        }
    }
    Check::Holds
}

fn ideal_subalgebra(m: &ModelCx) -> Check {
    let g = &m.g;
    let brute: Vec<ElemSet> = g.all().subsets().filter(|&s| g.is_ideal(s)).collect();
    if brute != g.ideals() {
        return Check::Fails("ideal listing differs from subset filtering".into());
    }
    all_of(
        brute,
        |&s| {
            let p = g.subset_predicates(s);
            p.order_ideal && p.sub_gea
        },
        |&s| format!("ideal {} is not a sub-GEA", set_str(g, s)),
    )
}

fn exocenter_oracle(m: &ModelCx) -> Check {
    if m.g.len() > BRUTE_FORCE_MAX {
        return Check::Vacuous;
    }
    let brute = exocenter_brute_force(&m.g);
    if brute == m.exo {
        Check::Holds
    } else {
        Check::Fails(format!("ideal pairs give {} maps, brute force {}", m.exo.len(), brute.len()))
    }
}

fn exocenter_boolean(m: &ModelCx) -> Check {
    let g = &m.g;
    if !m.exo.is_boolean_algebra(g) {
        return Check::Fails("exocenter is not a boolean algebra".into());
    }
    all_of(
        m.exo.iter(),
        |pi| {
            let k = pi.complement(g).summand();
            g.direct_sum_check(&[pi.summand(), k]).is_ok_and(|d| d.holds)
        },
        |pi| format!("{} does not give a direct sum", pi.display(g)),
    )
}

fn summand_bijection(m: &ModelCx) -> Check {
    let g = &m.g;
    let pairs = direct_summands(g);
    if pairs.len() != m.exo.len() {
        return Check::Fails(format!("{} ideal pairs but {} maps", pairs.len(), m.exo.len()));
    }
    all_of(
        m.exo.iter(),
        |pi| {
            let killed: ElemSet = (0..g.len()).filter(|&e| pi.apply(e) == 0).collect();
            pairs.contains(&(pi.summand(), killed)) && pi.complement(g).summand() == killed
        },
        |pi| format!("{} has no matching ideal pair", pi.display(g)),
    )
}

fn center_chars(m: &ModelCx) -> Check {
    let g = &m.g;
    match center(g, &m.exo) {
        Err(e) => Check::Fails(e.to_string()),
        Ok(c) => all_of(
            c,
            |(c, pi)| g.is_sharp(*c) && g.is_principal(*c) && pi.summand() == g.down(*c),
            |(c, _)| format!("central {} is not sharp and principal", g.name(*c)),
        ),
    }
}

fn central_orthocomplete(m: &ModelCx) -> Check {
    let r = cogea_check(&m.g, &m.exo);
    let f = m.g.structure_flags();
    if r.co1 && r.co2 && r.gex_complete_boolean && f.archimedean && f.orthocomplete && f.dedekind_orthocomplete {
        Check::Holds
    } else {
        Check::Fails(format!("{r:?} {f:?}"))
    }
}

fn cover_properties(m: &ModelCx) -> Check {
    let g = &m.g;
    let gamma = cover_system(g, &m.exo);
    match check_hull_system(g, &m.exo, gamma.maps()) {
        Ok(v) if v.holds => {}
        Ok(v) => return Check::Fails(format!("cover system fails {:?}", v.witness)),
        Err(e) => return Check::Fails(e.to_string()),
    }
    all_of(
        pairs(g.len()),
        |&(e, f)| {
            let (ge, gf) = (gamma.eta(e), gamma.eta(f));
            *ge == exocentral_cover(g, &m.exo, e)
                && m.exo.iter().filter(|p| p.apply(e) == e).all(|p| ge.leq(p))
                && (!g.leq(e, f) || ge.leq(gf))
        },
        |&(e, f)| format!("cover fails at {}", names(g, &[e, f])),
    )
}

fn hull_round_trip(m: &ModelCx, h: &HullSystem) -> Check {
    let g = &m.g;
    match check_hull_system(g, &m.exo, h.maps()) {
        Ok(v) if v.holds => {}
        Ok(v) => return Check::Fails(format!("not a hull system: {:?}", v.witness)),
        Err(e) => return Check::Fails(e.to_string()),
    }
    let theta = h.theta();
    if let Some((cond, w)) = hd_failure(g, theta.maps()) {
        return Check::Fails(format!("hulls fail {cond} at {w:?}"));
    }
    match hull_from_hd(g, &m.exo, theta.maps()) {
        Ok(back) if back == *h => Check::Holds,
        Ok(_) => Check::Fails("hulls determine a different system".into()),
        Err(e) => Check::Fails(e.to_string()),
    }
}

fn hull_meet_lemma(m: &ModelCx, h: &HullSystem) -> Check {
    let g = &m.g;
    all_of(
        pairs(g.len()),
        |&(e, f)| {
            let e1 = h.eta(f).apply(e);
            let f1 = h.eta(e).apply(f);
            let overlap = !h.eta(e).disjoint(h.eta(f));
            g.leq(e1, e)
                && g.leq(f1, f)
                && h.sim(e1, f1)
                && ((e1 != 0 && f1 != 0) == overlap)
                && (g.perp(e, f) || (e1 != 0 && f1 != 0))
        },
        |&(e, f)| format!("fails at {}", names(g, &[e, f])),
    )
}

fn dyad_criterion(m: &ModelCx, h: &HullSystem) -> Check {
    let d = is_divisible(&m.g, h);
    if d.agree && d.divisible == d.via_dyads {
        Check::Holds
    } else {
        Check::Fails(format!("direct split and dyad test disagree, witness {:?}", d.witness.map(|w| names(&m.g, &w))))
    }
}

fn no_monads_divisible(m: &ModelCx, h: &HullSystem) -> Check {
    let g = &m.g;
    if g.nonzero().iter().any(|p| is_monad(g, h, p)) {
        return Check::Vacuous;
    }
    let d = is_divisible(g, h);
    Check::from_failure(d.witness.map(|w| format!("not divisible at {}", names(g, &w))))
}

fn refinement_split(m: &ModelCx, h: &HullSystem) -> Check {
    let g = &m.g;
    let n = g.len();
    for e in 0..n {
        for f in g.perp_set(e) {
            let total = g.sum(e, f).unwrap();
            for s in g.down(total) {
                let t = g.diff(total, s).unwrap();
                match sk3e_split_eta(g, h, e, f, s, t) {
                    Ok([e1, e2, f1, f2]) => {
                        let ok = g.sum(e1, e2) == Some(e)
                            && g.sum(f1, f2) == Some(f)
                            && g.sum(e1, f1).is_some_and(|a| h.sim(a, s))
                            && g.sum(e2, f2).is_some_and(|b| h.sim(b, t));
                        if !ok {
                            return Check::Fails(format!("bad refinement for {}", names(g, &[e, f, s, t])));
                        }
                    }
                    Err(err) => return Check::Fails(err.to_string()),
                }
            }
        }
    }
    Check::Holds
}

fn td_largest_hull(m: &ModelCx, h: &HullSystem) -> Check {
    let g = &m.g;
    for t in g.all().subsets().filter(|t| t.contains(0)) {
        let r = td_sets(g, h, t);
        if !r.eta_td {
            continue;
        }
        let Some(ts) = r.t_star else {
            return Check::Fails(format!("type-determining {} has no largest hull", set_str(g, t)));
        };
        if !t.contains(ts) || !t.iter().all(|x| h.eta(x).leq(h.eta(ts))) {
            return Check::Fails(format!("{} is not a largest hull in {}", g.name(ts), set_str(g, t)));
        }
    }
    Check::Holds
}

fn eta_orthogonal(m: &ModelCx, h: &HullSystem) -> Check {
    let g = &m.g;
    let r = td_sets(g, h, g.all());
    match r.bad_families.first() {
        None => Check::Holds,
        Some(&fam) => Check::Fails(format!("family {} has no supremum sum", set_str(g, fam))),
    }
}

fn hull_congruence_divisible(m: &ModelCx, h: &HullSystem) -> Check {
    let g = &m.g;
    if !g.is_orthogonally_ordered() {
        return Check::Vacuous;
    }
    let rel = h.relation();
    let sk = check_sk(g, &rel).is_sk();
    let divisible = is_divisible(g, h).divisible;
    if sk != divisible {
        return Check::Fails(format!("SK {sk} but divisible {divisible}"));
    }
    if !sk {
        return Check::Holds;
    }
    let rels = Relations::new(g, &rel);
    all_of(
        pairs(g.len()),
        |&(e, f)| rels.related(e, f) == !h.eta(e).disjoint(h.eta(f)),
        |&(e, f)| format!("relatedness differs from hull overlap at {}", names(g, &[e, f])),
    )
}

fn hull_splitting(m: &ModelCx, h: &HullSystem) -> Check {
    let g = &m.g;
    if !g.is_orthogonally_ordered() || !is_divisible(g, h).divisible {
        return Check::Vacuous;
    }
    let sigma = match sigma_sim(g, &h.relation(), &m.exo) {
        Ok(s) => s,
        Err(e) => return Check::Fails(e.to_string()),
    };
    if !sigma.is_boolean_algebra(g) {
        return Check::Fails("splitting maps are not a boolean algebra".into());
    }
    match hull_from_hd(g, &m.exo, sigma.maps()) {
        Ok(back) if back == *h => Check::Holds,
        Ok(_) => Check::Fails("splitting maps determine a different hull system".into()),
        Err(e) => Check::Fails(e.to_string()),
    }
}
