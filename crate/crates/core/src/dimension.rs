//! Invariant, simple and finite elements of a dimension equivalence
//! relation, and the decomposition into types I, II and III.

use serde::{Deserialize, Serialize};

use crate::congruence::{EquivRel, SkContext};
use crate::elemset::ElemSet;
use crate::error::{CoreError, Result};
use crate::exocenter::{ExoMap, ExoSet};
use crate::gea::GeaTable;
use crate::hull::is_monad;

/// The summand map with range `E[0,c]`, if `c` is central.
pub fn center_map(ctx: &SkContext, c: usize) -> Option<&ExoMap> {
    ctx.exo.iter().find(|m| m.summand() == ctx.gea.down(c))
}

/// `c >= c1 ∼ f ⊥ c` forces `c1 = f = 0`.
pub fn no_equivalence_across(ctx: &SkContext, c: usize) -> bool {
    let g = &ctx.gea;
    g.down(c).iter().all(|c1| {
        ctx.rel
            .class_of(c1)
            .intersection(g.perp_set(c))
            .iter()
            .all(|f| c1 == 0 && f == 0)
    })
}

/// The six equivalent characterizations of an invariant element.
pub fn invariant_conditions(ctx: &SkContext, c: usize) -> [bool; 6] {
    let g = &ctx.gea;
    let principal = g.is_principal(c);
    let below = g.down(c);
    let orth: ElemSet = g.perp_set(c);
    [
        center_map(ctx, c).is_some_and(|m| ctx.sigma.contains(m)),
        ctx.eta(c).summand() == below,
        principal && no_equivalence_across(ctx, c),
        principal && ctx.rels.is_hereditary(below),
        principal && ctx.rel.class_of(c).is_subset(below),
        principal && ctx.rels.is_hereditary(orth),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSets {
    /// Invariant elements: principal, with no equivalences across `c`.
    pub gamma_sim: ElemSet,
    /// Elements with `η_c(E) = E[0,c]`.
    pub gamma_eta: ElemSet,
    /// Whether all six characterizations agree at every element.
    pub agreement: bool,
}

pub fn invariant_sets(ctx: &SkContext) -> InvariantSets {
    let mut gamma_sim = ElemSet::EMPTY;
    let mut gamma_eta = ElemSet::EMPTY;
    let mut agreement = true;
    for c in 0..ctx.n() {
        let v = invariant_conditions(ctx, c);
        if v[2] {
            gamma_sim.insert(c);
        }
        if v[1] {
            gamma_eta.insert(c);
        }
        agreement &= v.iter().all(|&x| x == v[0]);
    }
    InvariantSets {
        gamma_sim,
        gamma_eta,
        agreement,
    }
}

/// Every `e <= k` is unrelated to `k ⊖ e`.
pub fn is_simple(ctx: &SkContext, k: usize) -> bool {
    let g = &ctx.gea;
    g.down(k).iter().all(|e| !ctx.rels.related(e, g.diff(k, e).unwrap()))
}

/// The five equivalent characterizations of a simple element.
pub fn simple_conditions(ctx: &SkContext, k: usize) -> [bool; 5] {
    let g = &ctx.gea;
    let below = g.down(k);
    [
        is_simple(ctx, k),
        below
            .iter()
            .all(|e| ctx.eta(e).disjoint(ctx.eta(g.diff(k, e).unwrap()))),
        below.iter().all(|e| {
            below
                .intersection(g.perp_set(e))
                .iter()
                .filter(|&f| g.leq(g.sum(e, f).unwrap(), k))
                .all(|f| ctx.eta(e).disjoint(ctx.eta(f)))
        }),
        below.iter().all(|e| ctx.eta(e).apply(k) == e),
        is_monad(g, &ctx.hull, k),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleElements {
    pub simple: ElemSet,
    pub eta_monads: ElemSet,
    pub hull_fixed: ElemSet,
    pub agreement: bool,
}

pub fn simple_elements(ctx: &SkContext) -> SimpleElements {
    let mut out = SimpleElements {
        simple: ElemSet::EMPTY,
        eta_monads: ElemSet::EMPTY,
        hull_fixed: ElemSet::EMPTY,
        agreement: true,
    };
    for k in 0..ctx.n() {
        let v = simple_conditions(ctx, k);
        if v[0] {
            out.simple.insert(k);
        }
        if v[4] {
            out.eta_monads.insert(k);
        }
        if v[3] {
            out.hull_fixed.insert(k);
        }
        out.agreement &= v.iter().all(|&x| x == v[0]);
    }
    out
}

/// `e <= f` and `e ∼ f` force `e = f`.
pub fn is_finite(ctx: &SkContext, f: usize) -> bool {
    ctx.rel.class_of(f).intersection(ctx.gea.down(f)) == ElemSet::singleton(f)
}

pub fn finite_elements(ctx: &SkContext) -> ElemSet {
    (0..ctx.n()).filter(|&f| is_finite(ctx, f)).collect()
}

/// Join of the hulls of a set of elements.
pub fn hull_join(ctx: &SkContext, s: ElemSet) -> ExoMap {
    ExoSet::join_all(&ctx.gea, s.iter().map(|x| ctx.eta(x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FTilde {
    /// Finite invariant elements.
    pub set: ElemSet,
    /// The largest of them.
    pub f_tilde: usize,
}

pub fn f_tilde(ctx: &SkContext) -> Result<FTilde> {
    let set = finite_elements(ctx).intersection(invariant_sets(ctx).gamma_sim);
    let f_tilde = set
        .iter()
        .find(|&x| set.is_subset(ctx.gea.down(x)))
        .ok_or_else(|| CoreError::InternalInvariant("finite invariant elements have no largest member".into()))?;
    Ok(FTilde { set, f_tilde })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub factor: bool,
    /// Splitting set trivial; every nonzero hull is 1; `≾` total; nonzero
    /// elements pairwise related.
    pub conditions: [bool; 4],
    /// In a factor, each nonzero element is an atom or an η-dyad, never both.
    pub atom_xor_dyad: bool,
}

pub fn is_factor(ctx: &SkContext) -> FactorReport {
    let g = &ctx.gea;
    let n = ctx.n();
    let nz = g.nonzero();
    let conditions = [
        ctx.sigma.len() <= 2,
        nz.iter().all(|d| ctx.eta(d).is_identity()),
        (0..n).all(|e| (0..n).all(|f| ctx.rels.subequiv(e, f) || ctx.rels.subequiv(f, e))),
        nz.iter().all(|e| nz.is_subset(ctx.rels.related_set(e))),
    ];
    let atom_xor_dyad = !conditions[0]
        || nz
            .iter()
            .all(|e| g.is_atom(e) != crate::hull::is_dyad(g, &ctx.hull, e));
    FactorReport {
        factor: conditions[0],
        conditions,
        atom_xor_dyad,
    }
}

/// Type properties read directly off their definitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeFlags {
    /// A faithful simple element exists.
    pub type_i: bool,
    /// A faithful finite element exists and no nonzero simple element does.
    pub type_ii: bool,
    /// No nonzero finite element exists.
    pub type_iii: bool,
    /// A faithful finite invariant element exists.
    pub finite_type: bool,
    /// No nonzero finite invariant element exists.
    pub properly_non_finite: bool,
}

/// Everything the type theory needs about one dimension equivalence
/// relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgeaAnalysis {
    pub simple: SimpleElements,
    pub finite: ElemSet,
    pub invariant: InvariantSets,
    pub f_tilde: FTilde,
    pub eta_k: ExoMap,
    pub eta_f: ExoMap,
    pub eta_ftilde: ExoMap,
    pub types: TypeFlags,
}

impl DgeaAnalysis {
    pub fn k(&self) -> ElemSet {
        self.simple.simple
    }
}

pub fn analyze(ctx: &SkContext) -> Result<DgeaAnalysis> {
    if !ctx.is_der() {
        return Err(CoreError::NotDer);
    }
    let simple = simple_elements(ctx);
    let finite = finite_elements(ctx);
    let invariant = invariant_sets(ctx);
    let f_tilde = f_tilde(ctx)?;
    let faithful = |s: ElemSet| s.iter().any(|x| ctx.eta(x).is_identity());
    let types = TypeFlags {
        type_i: faithful(simple.simple),
        type_ii: faithful(finite) && simple.simple == ElemSet::singleton(0),
        type_iii: finite == ElemSet::singleton(0),
        finite_type: faithful(f_tilde.set),
        properly_non_finite: f_tilde.set == ElemSet::singleton(0),
    };
    Ok(DgeaAnalysis {
        eta_k: hull_join(ctx, simple.simple),
        eta_f: hull_join(ctx, finite),
        eta_ftilde: ctx.eta(f_tilde.f_tilde).clone(),
        simple,
        finite,
        invariant,
        f_tilde,
        types,
    })
}

/// A summand `π(E)` for a splitting map `π`, as a model of its own.
#[derive(Clone, Debug)]
pub struct Summand {
    pub ctx: SkContext,
    /// `embed[i]` is the parent index of element `i` of the summand.
    pub embed: Vec<usize>,
}

impl Summand {
    /// Position of a parent element inside the summand.
    pub fn project(&self, e: usize) -> Option<usize> {
        self.embed.iter().position(|&x| x == e)
    }

    pub fn lift(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|i| self.embed[i]).collect()
    }

    /// `ξ` restricted to the summand.
    pub fn restrict_map(&self, xi: &ExoMap) -> ExoMap {
        let image: Vec<usize> = self
            .embed
            .iter()
            .map(|&e| self.project(xi.apply(e)).expect("summand is an order ideal"))
            .collect();
        ExoMap::from_image(&image)
    }
}

pub fn restrict_summand(ctx: &SkContext, pi: &ExoMap) -> Result<Summand> {
    if !ctx.sigma.contains(pi) {
        return Err(CoreError::NotSplitting);
    }
    let g = &ctx.gea;
    let embed: Vec<usize> = pi.summand().iter().collect();
    let m = embed.len();
    let pos = |x: usize| embed.iter().position(|&y| y == x);
    let mut table = vec![None; m * m];
    for (i, &e) in embed.iter().enumerate() {
        for (j, &f) in embed.iter().enumerate() {
            table[i * m + j] = g.sum(e, f).map(|s| pos(s).expect("summand is closed under sums"));
        }
    }
    let names = embed.iter().map(|&e| g.name(e).to_string()).collect();
    let sub = GeaTable::from_table(names, &table)
        .map_err(|err| CoreError::InternalInvariant(format!("summand is not a GEA: {err}")))?;
    let ids: Vec<usize> = embed.iter().map(|&e| ctx.rel.class_ids()[e]).collect();
    let sub_ctx = SkContext::new(sub, EquivRel::from_class_ids(&ids))
        .map_err(|err| CoreError::InternalInvariant(format!("restricted relation: {err}")))?;
    Ok(Summand { ctx: sub_ctx, embed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionChecks {
    pub dgea: bool,
    pub exocenter: bool,
    pub hull: bool,
    pub sigma: bool,
    pub simple: bool,
    pub finite: bool,
    pub invariant: bool,
    pub f_tilde: bool,
}

impl RestrictionChecks {
    pub fn all(&self) -> bool {
        self.dgea && self.exocenter && self.hull && self.sigma && self.simple && self.finite && self.invariant && self.f_tilde
    }
}

/// Compares the structure of `π(E)` with the restriction of the structure
/// of `E`.
pub fn restriction_checks(ctx: &SkContext, a: &DgeaAnalysis, pi: &ExoMap, s: &Summand) -> Result<RestrictionChecks> {
    let sa = analyze(&s.ctx)?;
    let restrict_all = |set: &ExoSet| ExoSet::new(set.iter().map(|x| s.restrict_map(x)).collect());
    let image = |set: ElemSet| -> ElemSet { set.iter().map(|x| pi.apply(x)).collect() };
    let within = |set: ElemSet| set.intersection(pi.summand());
    Ok(RestrictionChecks {
        dgea: s.ctx.is_der(),
        exocenter: s.ctx.exo == restrict_all(&ctx.exo),
        hull: s
            .embed
            .iter()
            .enumerate()
            .all(|(i, &e)| *s.ctx.eta(i) == s.restrict_map(ctx.eta(e))),
        sigma: s.ctx.sigma == restrict_all(&ctx.sigma),
        simple: s.lift(sa.k()) == within(a.k()) && within(a.k()) == image(a.k()),
        finite: s.lift(sa.finite) == within(a.finite) && within(a.finite) == image(a.finite),
        invariant: s.lift(sa.invariant.gamma_sim) == within(a.invariant.gamma_sim)
            && within(a.invariant.gamma_sim) == image(a.invariant.gamma_sim),
        f_tilde: s.embed[sa.f_tilde.f_tilde] == pi.apply(a.f_tilde.f_tilde),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeVerdict {
    I,
    II,
    III,
    Mixed,
    /// The one-element model, which has every type.
    Vacuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Finiteness {
    Finite,
    ProperlyNonFinite,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionChecks {
    /// `π_I`, `π_II`, `π_III` are pairwise disjoint with join 1, and the
    /// finite refinements join back to `π_I` and `π_II`.
    pub partition: bool,
    /// The six projections other than `π_III` are hulls.
    pub in_theta: bool,
    /// Every summand has the type its name promises.
    pub summand_types: bool,
    /// No other triple or refinement in the splitting set has those types.
    pub unique: bool,
    /// The finite summands are effect algebras with the stated units.
    pub units: bool,
    /// The joins over `K` and `F` are attained as largest hulls.
    pub largest_hulls: bool,
    /// The type read off the definitions matches the hull criteria.
    pub type_criteria: bool,
}

impl DecompositionChecks {
    pub fn all(&self) -> bool {
        self.partition && self.in_theta && self.summand_types && self.unique && self.units && self.largest_hulls && self.type_criteria
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub pi_i: ExoMap,
    pub pi_ii: ExoMap,
    pub pi_iii: ExoMap,
    pub pi_i_f: ExoMap,
    pub pi_i_nf: ExoMap,
    pub pi_ii_f: ExoMap,
    pub pi_ii_nf: ExoMap,
    pub eta_k: ExoMap,
    pub eta_f: ExoMap,
    pub eta_ftilde: ExoMap,
    pub f_tilde: usize,
    pub verdict: TypeVerdict,
    pub finiteness: Finiteness,
    /// Unit of `π_IF(E)`, namely `η_K f̃`.
    pub unit_i_f: usize,
    /// Unit of `π_IIF(E)`, namely `η_K′ f̃`.
    pub unit_ii_f: usize,
    pub checks: DecompositionChecks,
}

impl Decomposition {
    pub fn projections(&self) -> [(&'static str, &ExoMap); 7] {
        [
            ("I", &self.pi_i),
            ("II", &self.pi_ii),
            ("III", &self.pi_iii),
            ("I_F", &self.pi_i_f),
            ("I_notF", &self.pi_i_nf),
            ("II_F", &self.pi_ii_f),
            ("II_notF", &self.pi_ii_nf),
        ]
    }

    /// Short type label such as `I_F`.
    pub fn label(&self) -> String {
        let base = match self.verdict {
            TypeVerdict::I => "I",
            TypeVerdict::II => "II",
            TypeVerdict::III => "III",
            TypeVerdict::Mixed => "mixed",
            TypeVerdict::Vacuous => return "vacuous".into(),
        };
        let suffix = match (self.verdict, self.finiteness) {
            (TypeVerdict::III, _) | (_, Finiteness::Mixed) => "",
            (_, Finiteness::Finite) => "_F",
            (_, Finiteness::ProperlyNonFinite) => "_notF",
        };
        format!("{base}{suffix}")
    }
}

fn type_flags_of(ctx: &SkContext, pi: &ExoMap, cache: &mut Vec<(ExoMap, TypeFlags)>) -> Result<TypeFlags> {
    if let Some((_, t)) = cache.iter().find(|(m, _)| m == pi) {
        return Ok(*t);
    }
    let s = restrict_summand(ctx, pi)?;
    let t = analyze(&s.ctx)?.types;
    cache.push((pi.clone(), t));
    Ok(t)
}

pub fn decompose_types(ctx: &SkContext) -> Result<Decomposition> {
    let a = analyze(ctx)?;
    let g = &ctx.gea;
    let co = |m: &ExoMap| m.complement(g);
    let (ek, ef, et) = (&a.eta_k, &a.eta_f, &a.eta_ftilde);
    let pi_i = ek.clone();
    let pi_ii = ef.meet(&co(ek));
    let pi_iii = co(ef);
    let pi_i_f = ek.meet(et);
    let pi_i_nf = ek.meet(&co(et));
    let pi_ii_f = pi_ii.meet(et);
    let pi_ii_nf = pi_ii.meet(&co(et));
    let one = ctx.identity();
    let theta = ctx.hull.theta();

    let disjoint3 = pi_i.disjoint(&pi_ii) && pi_i.disjoint(&pi_iii) && pi_ii.disjoint(&pi_iii);
    let partition = disjoint3
        && pi_i.join(&pi_ii, g).join(&pi_iii, g) == one
        && pi_i_f.join(&pi_i_nf, g) == pi_i
        && pi_ii_f.join(&pi_ii_nf, g) == pi_ii
        && [&pi_i, &pi_ii, &pi_iii].iter().all(|m| ctx.sigma.contains(m));
    let in_theta = [&pi_i, &pi_ii, &pi_i_f, &pi_i_nf, &pi_ii_f, &pi_ii_nf]
        .iter()
        .all(|m| theta.contains(m));

    let mut cache = Vec::new();
    let mut flags = |m: &ExoMap| type_flags_of(ctx, m, &mut cache);
    let t_i = flags(&pi_i)?;
    let t_ii = flags(&pi_ii)?;
    let t_iii = flags(&pi_iii)?;
    let t_i_f = flags(&pi_i_f)?;
    let t_i_nf = flags(&pi_i_nf)?;
    let t_ii_f = flags(&pi_ii_f)?;
    let t_ii_nf = flags(&pi_ii_nf)?;
    let summand_types = t_i.type_i
        && t_ii.type_ii
        && t_iii.type_iii
        && t_i_f.type_i
        && t_i_f.finite_type
        && t_i_nf.type_i
        && t_i_nf.properly_non_finite
        && t_ii_f.type_ii
        && t_ii_f.finite_type
        && t_ii_nf.type_ii
        && t_ii_nf.properly_non_finite;

    let sigma: Vec<ExoMap> = ctx.sigma.iter().cloned().collect();
    let all_flags: Vec<TypeFlags> = sigma.iter().map(&mut flags).collect::<Result<_>>()?;
    let mut unique = true;
    for (x, fx) in sigma.iter().zip(&all_flags) {
        for (y, fy) in sigma.iter().zip(&all_flags) {
            if fx.type_i && fy.type_ii {
                for (z, fz) in sigma.iter().zip(&all_flags) {
                    if fz.type_iii && x.join(y, g).join(z, g) == one && (*x != pi_i || *y != pi_ii || *z != pi_iii) {
                        unique = false;
                    }
                }
            }
            let joined = x.join(y, g);
            if joined == pi_i && fx.type_i && fx.finite_type && fy.type_i && fy.properly_non_finite && (*x != pi_i_f || *y != pi_i_nf) {
                unique = false;
            }
            if joined == pi_ii && fx.type_ii && fx.finite_type && fy.type_ii && fy.properly_non_finite && (*x != pi_ii_f || *y != pi_ii_nf) {
                unique = false;
            }
        }
    }

    let ft = a.f_tilde.f_tilde;
    let unit_i_f = ek.apply(ft);
    let unit_ii_f = co(ek).apply(ft);
    let unit_of = |m: &ExoMap, u: usize| m.summand() == g.down(u);
    let units = unit_of(&pi_i_f, unit_i_f) && unit_of(&pi_ii_f, unit_ii_f);

    let k_hulls: Vec<&ExoMap> = a.k().iter().map(|k| ctx.eta(k)).collect();
    let f_hulls: Vec<&ExoMap> = a.finite.iter().map(|f| ctx.eta(f)).collect();
    let ft_hulls: Vec<&ExoMap> = a.f_tilde.set.iter().map(|f| ctx.eta(f)).collect();
    let largest_hulls = k_hulls.contains(&ek) && f_hulls.contains(&ef) && ft_hulls.iter().all(|m| m.leq(et));

    let t = a.types;
    let zero = ctx.zero_map();
    let type_criteria = t.type_i == (*ek == one)
        && t.type_ii == (*ef == one && *ek == zero)
        && t.type_iii == (*ef == zero)
        && t.finite_type == (*et == one)
        && t.properly_non_finite == (ft == 0)
        && (!t.finite_type || (g.top() == Some(ft) && a.finite == g.all()));

    let verdict = if ctx.n() == 1 {
        TypeVerdict::Vacuous
    } else if pi_i == one {
        TypeVerdict::I
    } else if pi_ii == one {
        TypeVerdict::II
    } else if pi_iii == one {
        TypeVerdict::III
    } else {
        TypeVerdict::Mixed
    };
    let finiteness = if *et == one {
        Finiteness::Finite
    } else if ft == 0 {
        Finiteness::ProperlyNonFinite
    } else {
        Finiteness::Mixed
    };

    Ok(Decomposition {
        checks: DecompositionChecks {
            partition,
            in_theta,
            summand_types,
            unique,
            units,
            largest_hulls,
            type_criteria,
        },
        eta_k: a.eta_k,
        eta_f: a.eta_f,
        eta_ftilde: a.eta_ftilde,
        f_tilde: ft,
        verdict,
        finiteness,
        unit_i_f,
        unit_ii_f,
        pi_i,
        pi_ii,
        pi_iii,
        pi_i_f,
        pi_i_nf,
        pi_ii_f,
        pi_ii_nf,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditarySup {
    pub c: usize,
    /// Whether the input was closed under sums.
    pub ideal: bool,
    pub is_sup: bool,
    /// `η_c` is the join of the hulls of the members.
    pub hull_join: bool,
    pub sharp: bool,
    pub interval_hereditary: bool,
    /// `c` invariant, reported when the model is directed or orthogonally
    /// ordered.
    pub central_if_directed: Option<bool>,
}

/// The sum of a maximal orthogonal family in a hereditary set `h` whose
/// partial sums stay in `h`.
pub fn hereditary_sup(ctx: &SkContext, h: ElemSet) -> Result<HereditarySup> {
    let g = &ctx.gea;
    if !h.contains(0) || !ctx.rels.is_hereditary(h) {
        return Err(CoreError::NotHereditary);
    }
    if g.upper_bounds(h).is_empty() {
        return Err(CoreError::Unbounded);
    }
    let mut c = 0;
    while let Some(s) = h.without(0).iter().find_map(|x| g.sum(c, x).filter(|&s| h.contains(s))) {
        c = s;
    }
    let flags = (g.is_directed(), g.is_orthogonally_ordered());
    Ok(HereditarySup {
        c,
        ideal: g.is_ideal(h),
        is_sup: g.sup(h) == Some(c),
        hull_join: *ctx.eta(c) == hull_join(ctx, h),
        sharp: g.is_sharp(c),
        interval_hereditary: ctx.rels.is_hereditary(g.down(c)),
        central_if_directed: (flags.0 || flags.1).then(|| invariant_conditions(ctx, c)[2]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::build_equiv_named;
    use crate::fixtures::{b4, c3, trivial};

    fn b4_merged() -> SkContext {
        let g = b4();
        let r = build_equiv_named(&g, &[vec!["a", "b"]]).unwrap();
        SkContext::new(g, r).unwrap()
    }

    fn eq_ctx(g: GeaTable) -> SkContext {
        let n = g.len();
        SkContext::new(g, EquivRel::equality(n)).unwrap()
    }

    #[test]
    fn invariant_examples() {
        let s = invariant_sets(&eq_ctx(b4()));
        assert_eq!(s.gamma_sim, ElemSet::full(4));
        assert!(s.agreement);
        let s = invariant_sets(&b4_merged());
        assert_eq!(s.gamma_sim, ElemSet::from_iter([0, 3]));
        assert!(s.agreement);
    }

    #[test]
    fn simple_and_finite_examples() {
        let c = eq_ctx(c3());
        let k = simple_elements(&c);
        assert_eq!(k.simple, ElemSet::from_iter([0, 1]));
        assert!(k.agreement);
        assert_eq!(simple_elements(&b4_merged()).simple, ElemSet::from_iter([0, 1, 2]));
        assert_eq!(finite_elements(&c), ElemSet::full(3));
        assert_eq!(finite_elements(&eq_ctx(b4())), ElemSet::full(4));
    }

    #[test]
    fn f_tilde_examples() {
        assert_eq!(f_tilde(&eq_ctx(c3())).unwrap().f_tilde, 2);
        assert_eq!(f_tilde(&b4_merged()).unwrap().f_tilde, 3);
        assert_eq!(f_tilde(&eq_ctx(trivial())).unwrap().f_tilde, 0);
    }

    #[test]
    fn factor_examples() {
        let r = is_factor(&b4_merged());
        assert!(r.factor && r.conditions.iter().all(|&x| x) && r.atom_xor_dyad);
        assert!(!is_factor(&eq_ctx(b4())).factor);
        assert!(is_factor(&eq_ctx(trivial())).factor);
    }

    #[test]
    fn decomposition_goldens() {
        let d = decompose_types(&eq_ctx(c3())).unwrap();
        assert!(d.pi_i.is_identity() && d.pi_i_f.is_identity());
        assert_eq!((d.label().as_str(), d.unit_i_f), ("I_F", 2));
        assert!(d.checks.all(), "{:?}", d.checks);
        let d = decompose_types(&b4_merged()).unwrap();
        assert_eq!((d.label().as_str(), d.unit_i_f), ("I_F", 3));
        assert!(d.checks.all(), "{:?}", d.checks);
    }

    #[test]
    fn restriction_example() {
        let ctx = eq_ctx(b4());
        let pa = ctx.sigma.iter().find(|m| m.summand() == ElemSet::from_iter([0, 1])).unwrap().clone();
        let s = restrict_summand(&ctx, &pa).unwrap();
        assert_eq!(s.embed, vec![0, 1]);
        assert_eq!(s.ctx.gea.names(), &["0".to_string(), "a".to_string()]);
        let a = analyze(&ctx).unwrap();
        assert!(restriction_checks(&ctx, &a, &pa, &s).unwrap().all());
        let m = b4_merged();
        assert!(matches!(restrict_summand(&m, &pa), Err(CoreError::NotSplitting)));
    }

    #[test]
    fn hereditary_sup_examples() {
        let c = eq_ctx(c3());
        let r = hereditary_sup(&c, ElemSet::from_iter([0, 1])).unwrap();
        assert!(r.c == 1 && r.is_sup && !r.ideal);
        let b = eq_ctx(b4());
        let r = hereditary_sup(&b, ElemSet::from_iter([0, 1])).unwrap();
        assert!(r.c == 1 && r.is_sup && r.sharp && r.interval_hereditary && r.central_if_directed == Some(true));
        let m = b4_merged();
        assert_eq!(hereditary_sup(&m, ElemSet::from_iter([0, 1])), Err(CoreError::NotHereditary));
    }
}
