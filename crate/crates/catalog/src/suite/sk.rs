//! Properties of an SK-congruence, its splitting maps and invariant elements.

use gea_core::congruence::{decompose_pair, sigma_sim, splitting_conditions};
use gea_core::dimension::{center_map, invariant_conditions, invariant_sets, no_equivalence_across};
use gea_core::exocenter::is_central;
use gea_core::hull::{check_hull_system, hd_failure, hull_from_hd};
use gea_core::{ExoMap, ExoSet};

use super::{all_equal, all_of, names, pairs, Check, Evaluator, Property, SkCx, SK_CONTEXT};

pub(super) fn properties() -> Vec<Property> {
    let s = |name, summary, f| Property {
        name,
        summary,
        eval: Evaluator::Sk(f),
    };
    vec![
        s(SK_CONTEXT, "splitting maps and the induced hull system are consistent", context_consistency),
        s("der-two-forms", "the separation axiom agrees with its hull form", der_two_forms),
        s("splitting-four-way", "four characterizations of splitting agree", splitting_four_way),
        s("splitting-boolean-subalgebra", "splitting maps form a boolean subalgebra", splitting_boolean),
        s("splitting-coordinatewise", "a map splits iff equivalence is coordinatewise", splitting_coordinatewise),
        s("induced-hull-properties", "hulls from splitting maps: membership, kernels, separation", induced_hull_props),
        s("splitting-preserves-subequivalence", "splitting maps preserve sub-equivalence", preserves_subequivalence),
        s("equivalence-cancellation", "e ~ e+f+d implies e ~ e+f", equivalence_cancellation),
        s("subequivalence-preorder-csb", "sub-equivalence is a preorder with Cantor-Bernstein", preorder_csb),
        s("subequivalence-additive", "sub-equivalence is additive over orthogonal pairs", subequivalence_additive),
        s("pair-decomposition", "p and q split into equivalent and unrelated parts", pair_decomposition),
        s("hereditary-interval-disjoint", "a hereditary interval is orthogonal to disjoint elements", hereditary_disjoint),
        s("invariant-four-way", "four characterizations of no equivalence across c agree", invariant_four_way),
        s("invariant-decomposition-central", "invariant elements with decompositions are central", invariant_central),
        s("principal-hereditary-central", "principal hereditary intervals are split central summands", principal_hereditary),
        s("invariant-directed-ordered", "directed or orthogonally ordered models make invariants central", invariant_directed),
        s("eta-invariant-center", "hull-invariant elements form a sublattice of the center", eta_invariant_center),
        s("invariant-six-way", "six characterizations of invariant elements agree", invariant_six_way),
    ]
}

fn context_consistency(s: &SkCx) -> Check {
    let c = &s.ctx;
    if !c.report.is_sk() {
        return Check::Fails(format!("first failure {:?}", c.report.first_failure().map(|x| x.0)));
    }
    match sigma_sim(&c.gea, &c.rel, &c.exo) {
        Ok(sigma) if sigma == c.sigma => {}
        Ok(_) => return Check::Fails("splitting set differs".into()),
        Err(e) => return Check::Fails(e.to_string()),
    }
    match check_hull_system(&c.gea, &c.exo, c.hull.maps()) {
        Ok(v) if v.holds => Check::Holds,
        Ok(v) => Check::Fails(format!("induced hull fails {:?}", v.witness)),
        Err(e) => Check::Fails(e.to_string()),
    }
}

fn der_two_forms(s: &SkCx) -> Check {
    let r = &s.ctx.report;
    if r.sk4a_prime.is_some() && r.der_forms_agree == Some(true) {
        Check::Holds
    } else {
        Check::Fails(format!("separation verdict {:?}, hull form agrees {:?}", r.sk4a_prime, r.der_forms_agree))
    }
}

fn splitting_four_way(s: &SkCx) -> Check {
    let c = &s.ctx;
    all_of(
        c.exo.iter(),
        |pi| {
            let v = splitting_conditions(&c.gea, &c.rel, &c.rels, pi);
            all_equal(&v) && v[0] == c.sigma.contains(pi)
        },
        |pi| format!("conditions disagree at {}", pi.display(&c.gea)),
    )
}

fn splitting_boolean(s: &SkCx) -> Check {
    let c = &s.ctx;
    if c.sigma.is_boolean_algebra(&c.gea) && c.sigma.iter().all(|m| c.exo.contains(m)) {
        Check::Holds
    } else {
        Check::Fails(format!("{} splitting maps do not form a subalgebra", c.sigma.len()))
    }
}

fn splitting_coordinatewise(s: &SkCx) -> Check {
    let c = &s.ctx;
    let g = &c.gea;
    let n = g.len();
    all_of(
        c.exo.iter(),
        |pi| {
            let co = pi.complement(g);
            let coordinatewise = pairs(n).all(|(e, f)| {
                c.rel.equiv(e, f) == (c.rel.equiv(pi.apply(e), pi.apply(f)) && c.rel.equiv(co.apply(e), co.apply(f)))
            });
            coordinatewise == c.sigma.contains(pi)
        },
        |pi| format!("coordinatewise test differs from splitting at {}", pi.display(g)),
    )
}

fn induced_hull_props(s: &SkCx) -> Check {
    let c = &s.ctx;
    let g = &c.gea;
    let n = g.len();
    if let Some((cond, w)) = hd_failure(g, c.sigma.maps()) {
        return Check::Fails(format!("splitting set fails {cond} at {w:?}"));
    }
    match hull_from_hd(g, &c.exo, c.sigma.maps()) {
        Ok(h) if h == c.hull => {}
        _ => return Check::Fails("splitting set determines a different hull system".into()),
    }
    if let Some(e) = (0..n).find(|&e| !c.sigma.contains(c.eta(e))) {
        return Check::Fails(format!("hull of {} does not split", g.name(e)));
    }
    if let Some(e) = (0..n).find(|&e| *c.eta(e) != ExoSet::meet_all(n, c.sigma.iter().filter(|m| m.apply(e) == e))) {
        return Check::Fails(format!("hull of {} is not the least splitting map fixing it", g.name(e)));
    }
    for pi in c.sigma.iter() {
        if let Some(e) = (0..n).find(|&e| (pi.apply(e) == 0) != pi.disjoint(c.eta(e))) {
            return Check::Fails(format!("kernel test fails for {} at {}", pi.display(g), g.name(e)));
        }
    }
    all_of(
        pairs(n),
        |&(e, f)| {
            let separated = c.sigma.iter().any(|m| m.apply(e) == e && m.complement(g).apply(f) == f);
            let disjoint = c.eta(e).disjoint(c.eta(f));
            separated == disjoint && (!disjoint || !c.rels.related(e, f))
        },
        |&(e, f)| format!("separation fails at {}", names(g, &[e, f])),
    )
}

fn preserves_subequivalence(s: &SkCx) -> Check {
    let c = &s.ctx;
    let g = &c.gea;
    let n = g.len();
    for (e, f) in pairs(n) {
        let (he, hf) = (c.eta(e), c.eta(f));
        if c.rels.subequiv(e, f) && !he.leq(hf) {
            return Check::Fails(format!("e ≾ f without hull order at {}", names(g, &[e, f])));
        }
        if c.rel.equiv(e, f) && he != hf {
            return Check::Fails(format!("equivalent elements with different hulls {}", names(g, &[e, f])));
        }
        let below = g.down(f).iter().any(|f1| c.eta(f1) == he);
        if he.leq(hf) != below {
            return Check::Fails(format!("hull order not witnessed below {}", names(g, &[e, f])));
        }
        for pi in c.sigma.iter() {
            let (pe, pf) = (pi.apply(e), pi.apply(f));
            if (c.rels.subequiv(e, f) && !c.rels.subequiv(pe, pf)) || (c.rel.equiv(e, f) && !c.rel.equiv(pe, pf)) {
                return Check::Fails(format!("{} breaks {}", pi.display(g), names(g, &[e, f])));
            }
        }
    }
    Check::Holds
}

fn equivalence_cancellation(s: &SkCx) -> Check {
    let c = &s.ctx;
    let g = &c.gea;
    for e in 0..g.len() {
        for f in g.perp_set(e) {
            let ef = g.sum(e, f).unwrap();
            for d in g.perp_set(ef) {
                let efd = g.sum(ef, d).unwrap();
                if c.rel.equiv(e, efd) && !c.rel.equiv(e, ef) {
                    return Check::Fails(format!("cancellation fails at {}", names(g, &[e, f, d])));
                }
            }
        }
    }
    Check::Holds
}

fn preorder_csb(s: &SkCx) -> Check {
    let c = &s.ctx;
    let g = &c.gea;
    let n = g.len();
    let r = &c.rels;
    if let Some(e) = (0..n).find(|&e| !r.subequiv(e, e)) {
        return Check::Fails(format!("not reflexive at {}", g.name(e)));
    }
    for (e, f) in pairs(n) {
        if r.subequiv(e, f) && r.subequiv(f, e) && !c.rel.equiv(e, f) {
            return Check::Fails(format!("mutual sub-equivalence without equivalence {}", names(g, &[e, f])));
        }
        for d in 0..n {
            if r.subequiv(e, f) && r.subequiv(f, d) && !r.subequiv(e, d) {
                return Check::Fails(format!("not transitive at {}", names(g, &[e, f, d])));
            }
        }
    }
    Check::Holds
}

fn subequivalence_additive(s: &SkCx) -> Check {
    let c = &s.ctx;
    let g = &c.gea;
    let r = &c.rels;
    for e1 in 0..g.len() {
        for e2 in g.perp_set(e1) {
            for f1 in 0..g.len() {
                if !r.subequiv(e1, f1) {
                    continue;
                }
                for f2 in g.perp_set(f1) {
                    if r.subequiv(e2, f2) && !r.subequiv(g.sum(e1, e2).unwrap(), g.sum(f1, f2).unwrap()) {
                        return Check::Fails(format!("sums not sub-equivalent at {}", names(g, &[e1, e2, f1, f2])));
                    }
                }
            }
        }
    }
    Check::Holds
}

fn pair_decomposition(s: &SkCx) -> Check {
    let c = &s.ctx;
    let g = &c.gea;
    for (p, q) in pairs(g.len()) {
        match decompose_pair(g, &c.rel, p, q) {
            Ok(d) => {
                let ok = g.sum(d.p1, d.p2) == Some(p)
                    && g.sum(d.q1, d.q2) == Some(q)
                    && c.rel.equiv(d.p1, d.q1)
                    && !c.rels.related(d.p2, d.q2);
                if !ok {
                    return Check::Fails(format!("bad decomposition of {}", names(g, &[p, q])));
                }
            }
            Err(e) => return Check::Fails(e.to_string()),
        }
    }
    Check::Holds
}

fn hereditary_disjoint(s: &SkCx) -> Check {
    let c = &s.ctx;
    let g = &c.gea;
    all_of(
        pairs(g.len()),
        |&(c_, d)| !c.rels.is_hereditary(g.down(c_)) || !g.disjoint(d, c_) || g.perp(d, c_),
        |&(c_, d)| format!("{} is disjoint from but not orthogonal to {}", g.name(d), g.name(c_)),
    )
}

/// The equivalent forms of "no equivalence across `c`".
fn four_way(s: &SkCx, c: usize) -> [bool; 4] {
    let x = &s.ctx;
    let g = &x.gea;
    let sharp = g.is_sharp(c);
    [
        no_equivalence_across(x, c),
        sharp && x.rels.is_hereditary(g.down(c)),
        sharp && x.rel.class_of(c).is_subset(g.down(c)),
        sharp && x.rels.is_hereditary(g.perp_set(c)),
    ]
}

fn invariant_four_way(s: &SkCx) -> Check {
    let g = &s.ctx.gea;
    all_of(
        0..g.len(),
        |&c| all_equal(&four_way(s, c)),
        |&c| format!("{:?} at {}", four_way(s, c), g.name(c)),
    )
}

fn invariant_central(s: &SkCx) -> Check {
    let g = &s.ctx.gea;
    let decomposes = |c: usize| {
        (0..g.len()).all(|e| {
            g.down(c)
                .iter()
                .any(|e1| g.diff(e, e1).is_some_and(|e2| g.perp(e2, c)))
        })
    };
    all_of(
        0..g.len(),
        |&c| !(no_equivalence_across(&s.ctx, c) && decomposes(c)) || is_central(g, c),
        |&c| format!("{} decomposes every element but is not central", g.name(c)),
    )
}

fn split_central(s: &SkCx, c: usize) -> bool {
    is_central(&s.ctx.gea, c) && center_map(&s.ctx, c).is_some_and(|m| s.ctx.sigma.contains(m))
}

fn principal_hereditary(s: &SkCx) -> Check {
    let x = &s.ctx;
    let g = &x.gea;
    all_of(
        0..g.len(),
        |&c| (g.is_principal(c) && x.rels.is_hereditary(g.down(c))) == split_central(s, c),
        |&c| format!("principal hereditary test differs from split central at {}", g.name(c)),
    )
}

fn invariant_directed(s: &SkCx) -> Check {
    let g = &s.ctx.gea;
    let (directed, ordered) = (g.is_directed(), g.is_orthogonally_ordered());
    if !directed && !ordered {
        return Check::Vacuous;
    }
    all_of(
        0..g.len(),
        |&c| {
            !no_equivalence_across(&s.ctx, c)
                || ((!directed || is_central(g, c)) && (!ordered || g.is_principal(c)) && split_central(s, c))
        },
        |&c| format!("{} has no equivalence across it but is not a split central element", g.name(c)),
    )
}

fn eta_invariant_center(s: &SkCx) -> Check {
    let x = &s.ctx;
    let g = &x.gea;
    let gamma = invariant_sets(x).gamma_eta;
    if let Some(c) = gamma.iter().find(|&c| !is_central(g, c)) {
        return Check::Fails(format!("{} is hull-invariant but not central", g.name(c)));
    }
    for c in gamma {
        for d in gamma {
            let (hc, hd) = (x.eta(c), x.eta(d));
            let meet_ok = g
                .meet(c, d)
                .is_some_and(|m| gamma.contains(m) && *x.eta(m) == hc.meet(hd));
            if !meet_ok {
                return Check::Fails(format!("meet fails at {}", names(g, &[c, d])));
            }
            let bounded = !g.upper_bounds(gamma_pair(c, d)).is_empty();
            let join_ok: Option<ExoMap> = g.join(c, d).filter(|&j| gamma.contains(j)).map(|j| x.eta(j).clone());
            if bounded && join_ok != Some(hc.join(hd, g)) {
                return Check::Fails(format!("join fails at {}", names(g, &[c, d])));
            }
        }
    }
    Check::Holds
}

fn gamma_pair(c: usize, d: usize) -> gea_core::ElemSet {
    gea_core::ElemSet::singleton(c).with(d)
}

fn invariant_six_way(s: &SkCx) -> Check {
    let g = &s.ctx.gea;
    all_of(
        0..g.len(),
        |&c| all_equal(&invariant_conditions(&s.ctx, c)),
        |&c| format!("{:?} at {}", invariant_conditions(&s.ctx, c), g.name(c)),
    )
}
