//! Hull systems: an exocenter map `η_e` for every element `e`.

use serde::{Deserialize, Serialize};

use crate::congruence::EquivRel;
use crate::elemset::ElemSet;
use crate::error::{CoreError, Result};
use crate::exocenter::{exocentral_cover, ExoMap, ExoSet};
use crate::gea::GeaTable;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HullSystem {
    eta: Vec<ExoMap>,
}

impl HullSystem {
    /// Wraps a family without checking it; see [`check_hull_system`].
    pub fn from_maps(eta: Vec<ExoMap>) -> Self {
        HullSystem { eta }
    }

    pub fn eta(&self, e: usize) -> &ExoMap {
        &self.eta[e]
    }

    pub fn maps(&self) -> &[ExoMap] {
        &self.eta
    }

    pub fn len(&self) -> usize {
        self.eta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eta.is_empty()
    }

    /// `e ∼_η f` iff `η_e = η_f`.
    pub fn sim(&self, e: usize, f: usize) -> bool {
        self.eta[e] == self.eta[f]
    }

    /// The set `Θ_η` of all hulls.
    pub fn theta(&self) -> ExoSet {
        ExoSet::new(self.eta.clone())
    }

    pub fn relation(&self) -> EquivRel {
        EquivRel::from_class_ids(&(0..self.len()).map(|e| self.eta.iter().position(|m| *m == self.eta[e]).unwrap()).collect::<Vec<_>>())
    }

    /// The η-orthogonality of a family: pairwise disjoint hulls.
    pub fn is_orthogonal_family(&self, family: ElemSet) -> bool {
        let v: Vec<usize> = family.iter().collect();
        v.iter()
            .enumerate()
            .all(|(i, &a)| v[i + 1..].iter().all(|&b| self.eta[a].disjoint(&self.eta[b])))
    }
}

/// The exocentral cover system `e ↦ γ_e`.
pub fn cover_system(g: &GeaTable, s: &ExoSet) -> HullSystem {
    HullSystem {
        eta: (0..g.len()).map(|e| exocentral_cover(g, s, e)).collect(),
    }
}

/// `η_0 = 0` and `η_e = 1` otherwise.
pub fn indiscrete(g: &GeaTable) -> HullSystem {
    let n = g.len();
    HullSystem {
        eta: (0..n)
            .map(|e| if e == 0 { ExoMap::zero(n) } else { ExoMap::identity(n) })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullVerdict {
    pub holds: bool,
    /// Failing axiom tag and element tuple.
    pub witness: Option<(String, Vec<usize>)>,
}

pub fn check_hull_system(g: &GeaTable, s: &ExoSet, eta: &[ExoMap]) -> Result<HullVerdict> {
    let n = g.len();
    if eta.len() != n {
        return Err(CoreError::InternalInvariant("hull family has the wrong length".into()));
    }
    if let Some(e) = (0..n).find(|&e| !s.contains(&eta[e])) {
        return Err(CoreError::MapNotInExocenter(g.name(e).to_string()));
    }
    let fail = |tag: &str, w: Vec<usize>| {
        Ok(HullVerdict {
            holds: false,
            witness: Some((tag.to_string(), w)),
        })
    };
    if !eta[0].is_zero() {
        return fail("HS1", vec![0]);
    }
    if let Some(e) = (0..n).find(|&e| eta[e].apply(e) != e) {
        return fail("HS2", vec![e]);
    }
    for e in 0..n {
        for f in 0..n {
            if eta[eta[e].apply(f)] != eta[e].meet(&eta[f]) {
                return fail("HS3", vec![e, f]);
            }
        }
    }
    Ok(HullVerdict {
        holds: true,
        witness: None,
    })
}

/// The smallest member of `theta` fixing `e`, if there is one.
fn smallest_fixing(theta: &[ExoMap], e: usize) -> Option<&ExoMap> {
    let fixing: Vec<&ExoMap> = theta.iter().filter(|m| m.apply(e) == e).collect();
    fixing.iter().copied().find(|m| fixing.iter().all(|x| m.leq(x)))
}

/// Whether `theta` is hull determining, with the failing condition.
pub fn hd_failure(g: &GeaTable, theta: &[ExoMap]) -> Option<(&'static str, Vec<String>)> {
    for e in 0..g.len() {
        if smallest_fixing(theta, e).is_none() {
            return Some(("HD1", vec![g.name(e).to_string()]));
        }
    }
    for t in theta {
        for x in theta {
            let m = t.meet(&x.complement(g));
            if !theta.contains(&m) {
                return Some(("HD2", vec![t.display(g), x.display(g)]));
            }
        }
    }
    None
}

/// The hull system determined by a hull-determining subset of the exocenter.
pub fn hull_from_hd(g: &GeaTable, s: &ExoSet, theta: &[ExoMap]) -> Result<HullSystem> {
    if theta.iter().any(|m| !s.contains(m)) {
        return Err(CoreError::NotInExocenter);
    }
    if let Some((condition, elements)) = hd_failure(g, theta) {
        return Err(CoreError::NotHullDetermining { condition, elements });
    }
    Ok(HullSystem {
        eta: (0..g.len())
            .map(|e| smallest_fixing(theta, e).unwrap().clone())
            .collect(),
    })
}

/// Every hull system on `g`, obtained from its hull-determining subsets and
/// sorted. Exocenters larger than 16 maps are not supported.
pub fn all_hull_systems(g: &GeaTable, s: &ExoSet) -> Vec<HullSystem> {
    assert!(s.len() <= 16, "exocenter too large to enumerate hull systems");
    let maps = s.maps();
    let mut out: Vec<HullSystem> = (0u32..1 << maps.len())
        .filter_map(|mask| {
            let theta: Vec<ExoMap> = (0..maps.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| maps[i].clone())
                .collect();
            hull_from_hd(g, s, &theta).ok()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaClass {
    pub monad: bool,
    pub dyad: bool,
    pub faithful: bool,
}

pub fn is_monad(g: &GeaTable, h: &HullSystem, p: usize) -> bool {
    g.down(p).iter().all(|e| e == p || !h.sim(e, p))
}

pub fn is_dyad(g: &GeaTable, h: &HullSystem, p: usize) -> bool {
    g.down(p).iter().any(|e| h.sim(e, g.diff(p, e).unwrap()))
}

pub fn classify_eta(g: &GeaTable, h: &HullSystem, p: usize) -> EtaClass {
    EtaClass {
        monad: is_monad(g, h, p),
        dyad: is_dyad(g, h, p),
        faithful: h.eta(p).is_identity(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisibility {
    pub divisible: bool,
    /// First `(p, s, t)` with `p ∼ s ⊕ t` admitting no matching split of `p`.
    pub witness: Option<[usize; 3]>,
    /// Verdict of the dyad criterion on `(η_s ∧ η_t) p`.
    pub via_dyads: bool,
    /// Whether both criteria agree on every triple.
    pub agree: bool,
}

/// Whether `p` splits as `e ⊕ f` with `e ∼ s` and `f ∼ t`.
fn split_exists(g: &GeaTable, h: &HullSystem, p: usize, s: usize, t: usize) -> bool {
    g.down(p)
        .iter()
        .any(|e| h.sim(e, s) && h.sim(g.diff(p, e).unwrap(), t))
}

pub fn is_divisible(g: &GeaTable, h: &HullSystem) -> Divisibility {
    let n = g.len();
    let mut witness = None;
    let mut via_dyads = true;
    let mut agree = true;
    for p in 0..n {
        for s in 0..n {
            for t in g.perp_set(s) {
                if !h.sim(p, g.sum(s, t).unwrap()) {
                    continue;
                }
                let direct = split_exists(g, h, p, s, t);
                let q = h.eta(s).meet(h.eta(t)).apply(p);
                let dyad = is_dyad(g, h, q);
                if !direct && witness.is_none() {
                    witness = Some([p, s, t]);
                }
                via_dyads &= dyad;
                agree &= direct == dyad;
            }
        }
    }
    Divisibility {
        divisible: witness.is_none(),
        witness,
        via_dyads,
        agree,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdReport {
    /// Sums of η-orthogonal families drawn from `T`.
    pub bracket: ElemSet,
    /// `{η_e t}`.
    pub eta_image: ElemSet,
    pub eta_td: bool,
    pub eta_std: bool,
    pub t_star: Option<usize>,
    /// η-orthogonal families in `T` whose sum is undefined or not their supremum.
    pub bad_families: Vec<ElemSet>,
}

pub fn td_sets(g: &GeaTable, h: &HullSystem, t: ElemSet) -> TdReport {
    let mut bracket = ElemSet::EMPTY;
    let mut bad_families = Vec::new();
    for fam in t.without(0).subsets() {
        if !h.is_orthogonal_family(fam) {
            continue;
        }
        let v: Vec<usize> = fam.iter().collect();
        match g.orthosum(v.iter().copied()) {
            Some(total) if g.sup(fam) == Some(total) => bracket.insert(total),
            _ => bad_families.push(fam),
        }
    }
    let mut eta_image = ElemSet::EMPTY;
    for e in 0..g.len() {
        for x in t {
            eta_image.insert(h.eta(e).apply(x));
        }
    }
    let eta_td = bracket == t && eta_image == t;
    let eta_std = g.is_order_ideal(t) && bracket == t;
    let t_star = if eta_td {
        t.iter().find(|&x| t.iter().all(|y| h.eta(y).leq(h.eta(x))))
    } else {
        None
    };
    TdReport {
        bracket,
        eta_image,
        eta_td,
        eta_std,
        t_star,
        bad_families,
    }
}

/// Refines `e ⊕ f = s ⊕ t` into `e = e1 ⊕ e2`, `f = f1 ⊕ f2` with
/// `e1 ⊕ f1 ∼ s` and `e2 ⊕ f2 ∼ t`. Returns `(e1, e2, f1, f2)`.
pub fn sk3e_split_eta(g: &GeaTable, h: &HullSystem, e: usize, f: usize, s: usize, t: usize) -> Result<[usize; 4]> {
    if g.sum(e, f).is_none() || g.sum(e, f) != g.sum(s, t) {
        return Err(CoreError::InternalInvariant("split requires e ⊕ f = s ⊕ t".into()));
    }
    for e1 in g.down(e) {
        let e2 = g.diff(e, e1).unwrap();
        for f1 in g.down(f) {
            let f2 = g.diff(f, f1).unwrap();
            let (Some(a), Some(b)) = (g.sum(e1, f1), g.sum(e2, f2)) else {
                continue;
            };
            if h.sim(a, s) && h.sim(b, t) {
                return Ok([e1, e2, f1, f2]);
            }
        }
    }
    Err(CoreError::InternalInvariant(format!(
        "no refinement of {} + {} = {} + {}",
        g.name(e),
        g.name(f),
        g.name(s),
        g.name(t)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exocenter::exocenter;
    use crate::fixtures::{b4, c3, chain, t3};

    fn brute_force_hulls(g: &GeaTable, s: &ExoSet) -> Vec<HullSystem> {
        let n = g.len();
        let cands: Vec<Vec<&ExoMap>> = (0..n).map(|e| s.iter().filter(|m| m.apply(e) == e).collect()).collect();
        let mut idx = vec![0usize; n];
        let mut out = Vec::new();
        loop {
            let eta: Vec<ExoMap> = (0..n).map(|e| cands[e][idx[e]].clone()).collect();
            if check_hull_system(g, s, &eta).unwrap().holds {
                out.push(HullSystem::from_maps(eta));
            }
            let mut i = 0;
            while i < n {
                idx[i] += 1;
                if idx[i] < cands[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        out.sort();
        out
    }

    fn pi(s: &ExoSet, summand: &[usize]) -> ExoMap {
        s.iter().find(|m| m.summand() == summand.iter().copied().collect()).unwrap().clone()
    }

    #[test]
    fn hull_systems_from_hd_sets_are_all_hull_systems() {
        for g in [t3(), c3(), b4(), chain(4)] {
            let s = exocenter(&g);
            assert_eq!(all_hull_systems(&g, &s), brute_force_hulls(&g, &s));
        }
    }

    #[test]
    fn b4_hull_checks() {
        let g = b4();
        let s = exocenter(&g);
        assert!(check_hull_system(&g, &s, cover_system(&g, &s).maps()).unwrap().holds);
        assert!(check_hull_system(&g, &s, indiscrete(&g).maps()).unwrap().holds);
        let mut bad = cover_system(&g, &s).maps().to_vec();
        bad[1] = ExoMap::zero(4);
        let v = check_hull_system(&g, &s, &bad).unwrap();
        assert_eq!(v.witness, Some(("HS2".to_string(), vec![1])));
        bad[1] = ExoMap::from_image(&[0, 1, 1, 1]);
        assert!(matches!(check_hull_system(&g, &s, &bad), Err(CoreError::MapNotInExocenter(_))));
    }

    #[test]
    fn b4_hull_determining_sets() {
        let g = b4();
        let s = exocenter(&g);
        let one = ExoMap::identity(4);
        let zero = ExoMap::zero(4);
        assert_eq!(hull_from_hd(&g, &s, &[zero.clone(), one.clone()]).unwrap(), indiscrete(&g));
        assert_eq!(hull_from_hd(&g, &s, s.maps()).unwrap(), cover_system(&g, &s));
        let err = hull_from_hd(&g, &s, &[pi(&s, &[0, 1]), one]).unwrap_err();
        assert!(matches!(err, CoreError::NotHullDetermining { condition: "HD2", .. }));
    }

    #[test]
    fn classification_examples() {
        let g = b4();
        let ind = indiscrete(&g);
        assert_eq!(classify_eta(&g, &ind, 3), EtaClass { monad: false, dyad: true, faithful: true });
        let z = classify_eta(&g, &ind, 0);
        assert!(z.monad && z.dyad);
        let c = c3();
        let h = indiscrete(&c);
        let x = classify_eta(&c, &h, 2);
        assert!(!x.monad && x.faithful);
    }

    #[test]
    fn divisibility_examples() {
        let g = b4();
        let s = exocenter(&g);
        let d = is_divisible(&g, &cover_system(&g, &s));
        assert!(d.divisible && d.via_dyads && d.agree);
        let d = is_divisible(&g, &indiscrete(&g));
        assert_eq!(d.witness, Some([1, 1, 2]));
        assert!(!d.via_dyads && d.agree);
        assert!(is_divisible(&t3(), &indiscrete(&t3())).divisible);
    }

    #[test]
    fn td_examples() {
        let c = c3();
        let h = indiscrete(&c);
        let r = td_sets(&c, &h, ElemSet::from_iter([0, 1]));
        assert!(r.eta_std && r.eta_td && r.t_star == Some(1));
        let r = td_sets(&c, &h, ElemSet::singleton(0));
        assert!(r.eta_td && r.t_star == Some(0));
        let g = b4();
        let s = exocenter(&g);
        let r = td_sets(&g, &cover_system(&g, &s), ElemSet::from_iter([0, 1]));
        assert!(r.eta_td && r.t_star == Some(1));
    }

    #[test]
    fn refinement_examples() {
        let g = b4();
        let s = exocenter(&g);
        assert_eq!(sk3e_split_eta(&g, &cover_system(&g, &s), 1, 2, 1, 2).unwrap(), [1, 0, 0, 2]);
        let c = c3();
        assert_eq!(sk3e_split_eta(&c, &indiscrete(&c), 1, 1, 2, 0).unwrap(), [1, 0, 1, 0]);
    }
}
