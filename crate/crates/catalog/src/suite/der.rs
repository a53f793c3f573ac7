//! Properties of dimension equivalence relations: unrelatedness, simple and
//! finite elements, summands and the type decomposition.

use gea_core::congruence::comparability;
use gea_core::dimension::{hereditary_sup, hull_join, is_factor, restriction_checks, simple_conditions};
use gea_core::exocenter::is_central;
use gea_core::hull::td_sets;
use gea_core::{ElemSet, ExoMap};

use super::{all_equal, all_of, names, pairs, set_str, Check, DerCx, Evaluator, Property, SummandCx, DER_ANALYSIS};

pub(super) fn properties() -> Vec<Property> {
    let d = |name, summary, f| Property {
        name,
        summary,
        eval: Evaluator::Der(f),
    };
    vec![
        d(DER_ANALYSIS, "simple and invariant characterizations agree", analysis_consistency),
        d("unrelated-five-way", "five characterizations of unrelated pairs agree", unrelated_five_way),
        d("descendents-and-unrelated", "hull summands are descendents and unrelated elements", descendents),
        d("unrelated-to-orthosum", "unrelated to each summand implies unrelated to the sum", unrelated_orthosum),
        d("hereditary-supremum", "bounded hereditary ideals have sharp hereditary suprema", hereditary_supremum),
        d("general-comparability", "every pair is comparable on complementary hulls", general_comparability),
        d("factor-four-way", "four characterizations of factors agree", factor_four_way),
        d("hereditary-std-hull", "simple and finite sets attain their largest hull", hereditary_std_hull),
        d("summand-meets-hereditary", "four tests for a summand missing a hereditary set agree", summand_meets),
        d("summand-restriction", "split summands carry the restricted structure", summand_restriction),
        d("restricted-largest-hull", "the projected largest element keeps the largest hull", restricted_largest_hull),
        d("faithful-in-summand", "faithful in a summand means the summand is its hull", faithful_in_summand),
        d("faithful-hereditary-summand", "four tests for a faithful member in a hull summand agree", faithful_hereditary),
        d("simple-five-way", "five characterizations of simple elements agree", simple_five_way),
        d("simple-hull-order", "on simple elements hull order is sub-equivalence", simple_hull_order),
        d("simple-implies-finite", "simple elements are finite", simple_implies_finite),
        d("finite-subtraction", "finite elements form an order ideal with subtraction", finite_subtraction),
        d("simple-finite-std", "simple and finite sets are hereditary type-determining", simple_finite_std),
        d("simple-finite-orthodense", "simple and finite sets are orthodense in their hulls", simple_finite_orthodense),
        d("simple-finite-in-summand", "simple and finite elements of a summand are projections", simple_finite_in_summand),
        d("simple-finite-faithful-summand", "a hull summand has a faithful simple or finite element iff below the join", simple_finite_faithful),
        d("largest-finite-invariant", "the largest finite invariant element has the largest hull", largest_finite_invariant),
        d("faithful-finite-invariant", "a faithful finite invariant element is the unit", faithful_finite_invariant),
        d("finite-invariant-in-summand", "projection of the largest finite invariant element", finite_invariant_in_summand),
        d("type-criteria", "type flags match the hull criteria", type_criteria),
        d("summand-type-criteria", "types of every split summand match the hull criteria", summand_type_criteria),
        d("type-decomposition", "the type decomposition formulas and their checks", type_decomposition),
    ]
}

fn analysis_consistency(d: &DerCx) -> Check {
    let a = &d.a;
    if a.simple.agreement && a.invariant.agreement && a.invariant.gamma_sim == a.invariant.gamma_eta {
        Check::Holds
    } else {
        Check::Fails(format!("simple agreement {}, invariant agreement {}", a.simple.agreement, a.invariant.agreement))
    }
}

fn unrelated_five_way(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let conditions = |e: usize, f: usize| {
        let (he, hf) = (c.eta(e), c.eta(f));
        [
            !c.rels.related(e, f),
            c.sigma.iter().any(|m| m.apply(e) == e && m.complement(g).apply(f) == f),
            he.disjoint(hf),
            he.apply(f) == 0,
            !c.rels.related(hf.apply(e), he.apply(f)),
        ]
    };
    all_of(
        pairs(g.len()),
        |&(e, f)| all_equal(&conditions(e, f)),
        |&(e, f)| format!("{:?} at {}", conditions(e, f), names(g, &[e, f])),
    )
}

fn descendents(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    all_of(
        0..g.len(),
        |&e| {
            let h = c.eta(e);
            let co = h.complement(g);
            let desc: ElemSet = (0..g.len()).filter(|&x| c.rels.is_descendent(g, x, e)).collect();
            let unrel: ElemSet = (0..g.len()).filter(|&x| !c.rels.related(x, e)).collect();
            h.summand() == desc
                && co.summand() == unrel
                && g.direct_sum_check(&[h.summand(), co.summand()]).is_ok_and(|r| r.holds)
        },
        |&e| format!("hull summands of {} are not its descendents and unrelated elements", g.name(e)),
    )
}

fn unrelated_orthosum(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    for f in 0..g.len() {
        for e1 in 0..g.len() {
            for e2 in g.perp_set(e1) {
                let e = g.sum(e1, e2).unwrap();
                if !c.rels.related(f, e1) && !c.rels.related(f, e2) && c.rels.related(f, e) {
                    return Check::Fails(format!("{} is related to the sum of {}", g.name(f), names(g, &[e1, e2])));
                }
            }
        }
    }
    Check::Holds
}

fn hereditary_supremum(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    for h in g.nonzero().subsets().map(|s| s.with(0)) {
        if !g.is_ideal(h) || !c.rels.is_hereditary(h) || g.upper_bounds(h).is_empty() {
            continue;
        }
        let r = match hereditary_sup(c, h) {
            Ok(r) => r,
            Err(e) => return Check::Fails(format!("{}: {e}", set_str(g, h))),
        };
        let central = r.central_if_directed.map(|x| x && is_central(g, r.c));
        if !(r.is_sup && r.hull_join && r.sharp && r.interval_hereditary && central != Some(false)) {
            return Check::Fails(format!("{r:?} for {}", set_str(g, h)));
        }
    }
    Check::Holds
}

fn general_comparability(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    for (e, f) in pairs(g.len()) {
        match comparability(c, e, f) {
            Ok(x) => {
                let (h, co) = (c.eta(x), c.eta(x).complement(g));
                if !c.rels.subequiv(h.apply(e), h.apply(f)) || !c.rels.subequiv(co.apply(f), co.apply(e)) {
                    return Check::Fails(format!("{} does not compare {}", g.name(x), names(g, &[e, f])));
                }
            }
            Err(err) => return Check::Fails(err.to_string()),
        }
    }
    Check::Holds
}

fn factor_four_way(d: &DerCx) -> Check {
    let r = is_factor(d.ctx);
    if all_equal(&r.conditions) {
        Check::Holds
    } else {
        Check::Fails(format!("{:?}", r.conditions))
    }
}

/// `K` and `F` with their names.
fn hereditary_sets(d: &DerCx) -> [(&'static str, ElemSet); 2] {
    [("K", d.a.k()), ("F", d.a.finite)]
}

/// A member of `h` whose hull is above all others.
fn largest_hull_member(d: &DerCx, h: ElemSet) -> Option<usize> {
    h.iter().find(|&x| h.iter().all(|y| d.ctx.eta(y).leq(d.ctx.eta(x))))
}

fn hereditary_std_hull(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let exo_maps: Vec<&ExoMap> = c.exo.iter().collect();
    for (label, h) in hereditary_sets(d) {
        if !c.rels.is_hereditary(h) || !td_sets(g, &c.hull, h).eta_std {
            continue;
        }
        for x in h {
            for e in 0..g.len() {
                let p = c.eta(x).apply(e);
                if p != 0 && !h.intersection(g.down(p)).iter().any(|y| y != 0) {
                    return Check::Fails(format!("{label}: nothing nonzero below eta_{} {}", g.name(x), g.name(e)));
                }
            }
        }
        let Some(star) = largest_hull_member(d, h) else {
            return Check::Fails(format!("{label} has no largest hull"));
        };
        let hs = c.eta(star);
        let faithful = h.iter().any(|x| c.eta(x).is_identity());
        let ok = *hs == hull_join(c, h)
            && h.is_subset(hs.summand())
            && faithful == hs.is_identity()
            && g.is_orthodense(h, hs.summand())
            && exo_maps.iter().all(|pi| h.intersection(pi.summand()) == h.iter().map(|x| pi.apply(x)).collect());
        if !ok {
            return Check::Fails(format!("{label} with largest member {}", g.name(star)));
        }
    }
    Check::Holds
}

fn summand_meets(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    for (label, h) in hereditary_sets(d) {
        let Some(star) = largest_hull_member(d, h) else {
            return Check::Fails(format!("{label} has no largest hull"));
        };
        for pi in c.sigma.iter() {
            let co = pi.complement(g);
            let v = [
                h.intersection(pi.summand()) == ElemSet::singleton(0),
                h.is_subset(co.summand()),
                pi.disjoint(c.eta(star)),
                h.iter().all(|x| pi.disjoint(c.eta(x))),
            ];
            if !all_equal(&v) {
                return Check::Fails(format!("{label}, {}: {v:?}", pi.display(g)));
            }
        }
    }
    Check::Holds
}

fn summand_restriction(d: &DerCx) -> Check {
    let g = &d.ctx.gea;
    for s in &d.summands {
        match restriction_checks(d.ctx, &d.a, &s.pi, &s.summand) {
            Ok(r) if r.all() => {}
            Ok(r) => return Check::Fails(format!("{}: {r:?}", s.pi.display(g))),
            Err(e) => return Check::Fails(e.to_string()),
        }
    }
    Check::Holds
}

/// Summands whose map is a hull.
fn hull_summands<'a>(d: &'a DerCx) -> impl Iterator<Item = &'a SummandCx> {
    let theta = d.ctx.hull.theta();
    d.summands.iter().filter(move |s| theta.contains(&s.pi))
}

fn restricted_largest_hull(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    for (label, h) in hereditary_sets(d) {
        let Some(star) = largest_hull_member(d, h) else {
            return Check::Fails(format!("{label} has no largest hull"));
        };
        for s in hull_summands(d) {
            let pi = &s.pi;
            let sharp = pi.apply(star);
            let inside = h.intersection(pi.summand());
            let hs = c.eta(sharp);
            let restricted = s.summand.restrict_map(hs);
            let ok = inside.contains(sharp)
                && *hs == c.eta(star).compose(pi)
                && *hs == c.eta(star).meet(pi)
                && inside.iter().all(|x| s.summand.restrict_map(c.eta(x)).leq(&restricted))
                && c.eta(star).meet(pi).summand() == hs.summand()
                && g.is_orthodense(inside, hs.summand());
            if !ok {
                return Check::Fails(format!("{label} in {} with projected member {}", pi.display(g), g.name(sharp)));
            }
        }
    }
    Check::Holds
}

fn faithful_in_summand(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let theta = c.hull.theta();
    for s in &d.summands {
        for p in s.pi.summand() {
            let v = [s.faithful(p), s.pi.leq(c.eta(p)), s.pi == *c.eta(p)];
            if !all_equal(&v) || (v[0] && !theta.contains(&s.pi)) {
                return Check::Fails(format!("{v:?} for {} in {}", g.name(p), s.pi.display(g)));
            }
        }
    }
    Check::Holds
}

fn faithful_hereditary(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    for (label, h) in hereditary_sets(d) {
        let Some(star) = largest_hull_member(d, h) else {
            return Check::Fails(format!("{label} has no largest hull"));
        };
        for s in hull_summands(d) {
            let pi = &s.pi;
            let inside = h.intersection(pi.summand());
            let v = [
                h.iter().any(|x| c.eta(x) == pi),
                pi.leq(c.eta(star)),
                s.faithful(pi.apply(star)),
                inside.iter().any(|x| s.faithful(x)),
            ];
            if !all_equal(&v) || (v[0] && !g.is_orthodense(inside, pi.summand())) {
                return Check::Fails(format!("{label} in {}: {v:?}", pi.display(g)));
            }
        }
    }
    Check::Holds
}

fn simple_five_way(d: &DerCx) -> Check {
    let g = &d.ctx.gea;
    all_of(
        0..g.len(),
        |&k| all_equal(&simple_conditions(d.ctx, k)),
        |&k| format!("{:?} at {}", simple_conditions(d.ctx, k), g.name(k)),
    )
}

fn simple_hull_order(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let k = d.a.k();
    let pairs_k = k.iter().flat_map(|q| k.iter().map(move |x| (q, x)));
    all_of(
        pairs_k,
        |&(q, x)| {
            c.eta(q).leq(c.eta(x)) == c.rels.subequiv(q, x) && (c.eta(q) == c.eta(x)) == c.rel.equiv(q, x)
        },
        |&(q, x)| format!("hull order and sub-equivalence differ at {}", names(g, &[q, x])),
    )
}

fn simple_implies_finite(d: &DerCx) -> Check {
    let a = &d.a;
    if a.k().is_subset(a.finite) && a.eta_k.leq(&a.eta_f) {
        Check::Holds
    } else {
        Check::Fails(format!("simple {} finite {}", set_str(&d.ctx.gea, a.k()), set_str(&d.ctx.gea, a.finite)))
    }
}

fn finite_subtraction(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let f = d.a.finite;
    if !g.is_order_ideal(f) {
        return Check::Fails(format!("finite elements {} are not an order ideal", set_str(g, f)));
    }
    for e in f {
        for x in f.intersection(c.rel.class_of(e)) {
            for e1 in g.down(e) {
                for f1 in g.down(x).intersection(c.rel.class_of(e1)) {
                    let (e2, f2) = (g.diff(e, e1).unwrap(), g.diff(x, f1).unwrap());
                    if !c.rel.equiv(e2, f2) {
                        return Check::Fails(format!("subtraction fails at {}", names(g, &[e, x, e1, f1])));
                    }
                }
            }
        }
    }
    Check::Holds
}

fn simple_finite_std(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let (k, f, ft) = (d.a.k(), d.a.finite, d.a.f_tilde.set);
    let k_ok = c.rels.is_hereditary(k) && g.is_order_ideal(k) && td_sets(g, &c.hull, k).eta_std;
    let f_ok = c.rels.is_hereditary(f) && g.is_ideal(f) && td_sets(g, &c.hull, f).eta_std;
    let ft_ok = td_sets(g, &c.hull, ft).eta_td;
    if k_ok && f_ok && ft_ok {
        Check::Holds
    } else {
        Check::Fails(format!("simple {k_ok}, finite {f_ok}, finite invariant {ft_ok}"))
    }
}

fn simple_finite_orthodense(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let theta = c.hull.theta();
    for (label, h, eta_h) in [("K", d.a.k(), &d.a.eta_k), ("F", d.a.finite, &d.a.eta_f)] {
        let attained = h.iter().any(|x| c.eta(x) == eta_h) && h.iter().all(|x| c.eta(x).leq(eta_h));
        let ok = attained
            && theta.contains(eta_h)
            && h.is_subset(eta_h.summand())
            && g.is_orthodense(h, eta_h.summand())
            && (h == ElemSet::singleton(0)) == eta_h.is_zero();
        if !ok {
            return Check::Fails(format!("{label} = {} with join {}", set_str(g, h), eta_h.display(g)));
        }
    }
    Check::Holds
}

fn simple_finite_in_summand(d: &DerCx) -> Check {
    let g = &d.ctx.gea;
    for s in &d.summands {
        let pi = &s.pi;
        for (label, parent, own) in [("K", d.a.k(), s.analysis.k()), ("F", d.a.finite, s.analysis.finite)] {
            let projected: ElemSet = parent.iter().map(|x| pi.apply(x)).collect();
            let lifted = s.summand.lift(own);
            if lifted != parent.intersection(pi.summand()) || lifted != projected {
                return Check::Fails(format!("{label} of {} is {}", pi.display(g), set_str(g, lifted)));
            }
        }
    }
    Check::Holds
}

fn simple_finite_faithful(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    for (label, h, eta_h) in [("K", d.a.k(), &d.a.eta_k), ("F", d.a.finite, &d.a.eta_f)] {
        for s in hull_summands(d) {
            let inside = h.intersection(s.pi.summand());
            let v = [
                h.iter().any(|x| *c.eta(x) == s.pi),
                s.pi.leq(eta_h),
                inside.iter().any(|x| s.faithful(x)),
            ];
            if !all_equal(&v) || (v[0] && !g.is_orthodense(inside, s.pi.summand())) {
                return Check::Fails(format!("{label} in {}: {v:?}", s.pi.display(g)));
            }
        }
    }
    Check::Holds
}

fn largest_finite_invariant(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let (set, ft) = (d.a.f_tilde.set, d.a.f_tilde.f_tilde);
    let h = c.eta(ft);
    let ok = set.contains(ft)
        && set.iter().all(|x| c.eta(x).leq(h) && g.leq(x, ft))
        && set.is_subset(h.summand())
        && h.summand() == g.down(ft)
        && g.down(ft).is_subset(d.a.finite);
    if ok {
        Check::Holds
    } else {
        Check::Fails(format!("largest finite invariant {} in {}", g.name(ft), set_str(g, set)))
    }
}

fn faithful_finite_invariant(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let (set, ft) = (d.a.f_tilde.set, d.a.f_tilde.f_tilde);
    let v = [
        set.iter().any(|x| c.eta(x).is_identity()),
        c.eta(ft).is_identity(),
        g.down(ft) == g.all(),
    ];
    if !all_equal(&v) || (v[0] && (g.top() != Some(ft) || d.a.finite != g.all())) {
        return Check::Fails(format!("{v:?} with largest finite invariant {}", g.name(ft)));
    }
    Check::Holds
}

fn finite_invariant_in_summand(d: &DerCx) -> Check {
    let g = &d.ctx.gea;
    let ft = d.a.f_tilde.f_tilde;
    all_of(
        d.summands.iter(),
        |s| s.summand.embed[s.analysis.f_tilde.f_tilde] == s.pi.apply(ft),
        |s| format!("largest finite invariant of {} is not the projection", s.pi.display(g)),
    )
}

fn type_criteria(d: &DerCx) -> Check {
    let a = &d.a;
    let t = a.types;
    let v = [
        t.type_i == a.eta_k.is_identity(),
        t.type_ii == (a.eta_f.is_identity() && a.eta_k.is_zero()),
        t.type_iii == a.eta_f.is_zero(),
        t.finite_type == a.eta_ftilde.is_identity(),
        t.properly_non_finite == (a.f_tilde.f_tilde == 0),
    ];
    if v.iter().all(|&x| x) {
        Check::Holds
    } else {
        Check::Fails(format!("{t:?} against criteria {v:?}"))
    }
}

fn summand_type_criteria(d: &DerCx) -> Check {
    let c = d.ctx;
    let g = &c.gea;
    let a = &d.a;
    let theta = c.hull.theta();
    let not_k = a.eta_k.complement(g);
    let not_f = a.eta_f.complement(g);
    for s in &d.summands {
        let pi = &s.pi;
        let t = s.analysis.types;
        let in_theta = theta.contains(pi);
        let v = [
            !(t.type_i || t.type_ii || t.finite_type) || in_theta,
            t.type_i == (in_theta && pi.leq(&a.eta_k)),
            t.type_ii == (in_theta && pi.leq(&a.eta_f.meet(&not_k))),
            t.type_iii == pi.leq(&not_f),
            t.finite_type == (in_theta && pi.leq(&a.eta_ftilde)),
            t.properly_non_finite == pi.disjoint(&a.eta_ftilde),
        ];
        if !v.iter().all(|&x| x) {
            return Check::Fails(format!("{}: {t:?} against {v:?}", pi.display(g)));
        }
    }
    Check::Holds
}

fn type_decomposition(d: &DerCx) -> Check {
    let g = &d.ctx.gea;
    let a = &d.a;
    let x = &d.d;
    let formulas = x.pi_i == a.eta_k
        && x.pi_ii == a.eta_f.meet(&a.eta_k.complement(g))
        && x.pi_iii == a.eta_f.complement(g)
        && x.pi_i_f == a.eta_k.meet(&a.eta_ftilde)
        && x.unit_i_f == a.eta_k.apply(a.f_tilde.f_tilde);
    if formulas && x.checks.all() {
        Check::Holds
    } else {
        Check::Fails(format!("formulas {formulas}, checks {:?}", x.checks))
    }
}
