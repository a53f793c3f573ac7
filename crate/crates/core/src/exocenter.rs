//! The exocenter: endomorphisms projecting onto direct summands.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::elemset::ElemSet;
use crate::error::{CoreError, Result};
use crate::gea::GeaTable;

/// A map on the elements of a model, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExoMap {
    image: Vec<u8>,
}

impl fmt::Debug for ExoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExoMap{:?}", self.image)
    }
}

impl ExoMap {
    pub fn from_image(image: &[usize]) -> Self {
        ExoMap {
            image: image.iter().map(|&x| x as u8).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        ExoMap { image: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        ExoMap {
            image: (0..n as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, e: usize) -> usize {
        self.image[e] as usize
    }

    pub fn image(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.image.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Fixed points, which for an exocenter map is its range `π(E)`.
    pub fn summand(&self) -> ElemSet {
        (0..self.len()).filter(|&e| self.apply(e) == e).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ExoMap) -> ExoMap {
        ExoMap {
            image: other.image.iter().map(|&x| self.image[x as usize]).collect(),
        }
    }

    /// The meet in the exocenter, which is composition.
    pub fn meet(&self, other: &ExoMap) -> ExoMap {
        self.compose(other)
    }

    /// `π′e = e ⊖ πe`.
    pub fn complement(&self, g: &GeaTable) -> ExoMap {
        ExoMap {
            image: (0..self.len())
                .map(|e| g.diff(e, self.apply(e)).expect("πe <= e") as u8)
                .collect(),
        }
    }

    pub fn join(&self, other: &ExoMap, g: &GeaTable) -> ExoMap {
        self.complement(g).meet(&other.complement(g)).complement(g)
    }

    /// `π <= ξ` iff `π ∘ ξ = π`.
    pub fn leq(&self, other: &ExoMap) -> bool {
        self.compose(other) == *self
    }

    pub fn disjoint(&self, other: &ExoMap) -> bool {
        self.meet(other).is_zero()
    }

    pub fn display(&self, g: &GeaTable) -> String {
        let parts: Vec<String> = (0..self.len())
            .map(|e| format!("{}->{}", g.name(e), g.name(self.apply(e))))
            .collect();
        format!("[{}]", parts.join(" "))
    }
}

/// A set of exocenter maps sorted by image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ExoSet {
    maps: Vec<ExoMap>,
}

impl ExoSet {
    pub fn new(mut maps: Vec<ExoMap>) -> Self {
        maps.sort();
        maps.dedup();
        ExoSet { maps }
    }

    pub fn maps(&self) -> &[ExoMap] {
        &self.maps
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExoMap> {
        self.maps.iter()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn contains(&self, m: &ExoMap) -> bool {
        self.maps.binary_search(m).is_ok()
    }

    pub fn position(&self, m: &ExoMap) -> Option<usize> {
        self.maps.binary_search(m).ok()
    }

    /// Meet of a family, taken as the identity for an empty family.
    pub fn meet_all<'a>(n: usize, maps: impl IntoIterator<Item = &'a ExoMap>) -> ExoMap {
        maps.into_iter().fold(ExoMap::identity(n), |acc, m| acc.meet(m))
    }

    pub fn join_all<'a>(g: &GeaTable, maps: impl IntoIterator<Item = &'a ExoMap>) -> ExoMap {
        maps.into_iter().fold(ExoMap::zero(g.len()), |acc, m| acc.join(m, g))
    }

    /// Closure under complement, meet and join, containing 0 and 1, with the
    /// boolean laws checked on all pairs and triples.
    pub fn is_boolean_algebra(&self, g: &GeaTable) -> bool {
        let n = g.len();
        if !self.contains(&ExoMap::zero(n)) || !self.contains(&ExoMap::identity(n)) {
            return false;
        }
        for p in &self.maps {
            let pc = p.complement(g);
            if !self.contains(&pc) || pc.complement(g) != *p || !p.meet(&pc).is_zero() || !p.join(&pc, g).is_identity() {
                return false;
            }
            for q in &self.maps {
                let (m, j) = (p.meet(q), p.join(q, g));
                if !self.contains(&m) || !self.contains(&j) || m != q.meet(p) || j != q.join(p, g) {
                    return false;
                }
                if p.leq(q) != (p.join(q, g) == *q) {
                    return false;
                }
                for r in &self.maps {
                    if p.meet(&q.join(r, g)) != p.meet(q).join(&p.meet(r), g) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The exocenter axioms for a candidate map.
pub fn is_exo_map(g: &GeaTable, pi: &ExoMap) -> bool {
    let n = g.len();
    if pi.len() != n || pi.image.iter().any(|&x| x as usize >= n) {
        return false;
    }
    for e in 0..n {
        let pe = pi.apply(e);
        if !g.leq(pe, e) || pi.apply(pe) != pe {
            return false;
        }
        for f in g.perp_set(e) {
            let pf = pi.apply(f);
            match g.sum(pe, pf) {
                Some(s) if s == pi.apply(g.sum(e, f).unwrap()) => {}
                _ => return false,
            }
        }
    }
    let fixed = pi.summand();
    let killed: ElemSet = (0..n).filter(|&f| pi.apply(f) == 0).collect();
    fixed.iter().all(|e| killed.is_subset(g.perp_set(e)))
}

/// Pairs of ideals `(H, K)` with `E = H ⊕ K`, ordered by `H`.
pub fn direct_summands(g: &GeaTable) -> Vec<(ElemSet, ElemSet)> {
    let ideals = g.ideals();
    let mut out = Vec::new();
    for &h in &ideals {
        for &k in &ideals {
            if h.intersection(k) == ElemSet::singleton(0)
                && h.len() * k.len() >= g.len()
                && g.direct_sum_check(&[h, k]).map(|d| d.holds).unwrap_or(false)
            {
                out.push((h, k));
            }
        }
    }
    out
}

/// The exocenter, built from complementary ideal pairs: `πe` is the
/// first coordinate of `e`.
pub fn exocenter(g: &GeaTable) -> ExoSet {
    let n = g.len();
    let maps = direct_summands(g)
        .into_iter()
        .map(|(h, k)| {
            let mut image = vec![0; n];
            for x in h {
                for y in k {
                    image[g.sum(x, y).unwrap()] = x;
                }
            }
            ExoMap::from_image(&image)
        })
        .collect();
    ExoSet::new(maps)
}

/// The exocenter by filtering every map `E -> E` through the axioms.
pub fn exocenter_brute_force(g: &GeaTable) -> ExoSet {
    let n = g.len();
    let mut image = vec![0usize; n];
    let mut maps = Vec::new();
    loop {
        let m = ExoMap::from_image(&image);
        if is_exo_map(g, &m) {
            maps.push(m);
        }
        let mut i = 0;
        while i < n {
            image[i] += 1;
            if image[i] < n {
                break;
            }
            image[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    ExoSet::new(maps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExoOps {
    pub complement: ExoMap,
    pub meet: ExoMap,
    pub join: ExoMap,
    pub leq: bool,
    pub disjoint: bool,
}

pub fn exo_boolean_ops(g: &GeaTable, s: &ExoSet, pi: &ExoMap, xi: &ExoMap) -> Result<ExoOps> {
    if !s.contains(pi) || !s.contains(xi) {
        return Err(CoreError::NotInExocenter);
    }
    Ok(ExoOps {
        complement: pi.complement(g),
        meet: pi.meet(xi),
        join: pi.join(xi, g),
        leq: pi.leq(xi),
        disjoint: pi.disjoint(xi),
    })
}

/// `c` is central: unique decompositions `e = e1 ⊕ e2` with `e1 <= c` and
/// `e2 ⊥ c`, `c` principal, and the elements orthogonal to `c` are closed
/// under sums.
pub fn is_central(g: &GeaTable, c: usize) -> bool {
    let below = g.down(c);
    let orth = g.perp_set(c);
    let unique = (0..g.len()).all(|e| {
        let count = below
            .iter()
            .filter(|&e1| g.leq(e1, e) && orth.contains(g.diff(e, e1).unwrap()))
            .count();
        count == 1
    });
    let closed = orth
        .iter()
        .all(|p| orth.intersection(g.perp_set(p)).iter().all(|q| orth.contains(g.sum(p, q).unwrap())));
    unique && g.is_principal(c) && closed
}

/// The center as pairs `(c, π_c)` with `π_c(E) = E[0,c]`, computed from the
/// exocenter and checked against the element-wise characterization.
pub fn center(g: &GeaTable, s: &ExoSet) -> Result<Vec<(usize, ExoMap)>> {
    let mut out = Vec::new();
    for c in 0..g.len() {
        let via_maps = s.iter().find(|m| m.summand() == g.down(c));
        if via_maps.is_some() != is_central(g, c) {
            return Err(CoreError::InternalInvariant(format!(
                "center characterizations disagree at {}",
                g.name(c)
            )));
        }
        if let Some(m) = via_maps {
            out.push((c, m.clone()));
        }
    }
    Ok(out)
}

/// The smallest exocenter map fixing `e`.
pub fn exocentral_cover(g: &GeaTable, s: &ExoSet, e: usize) -> ExoMap {
    ExoSet::meet_all(g.len(), s.iter().filter(|m| m.apply(e) == e))
}

/// Families of distinct nonzero elements whose exocentral covers are
/// pairwise disjoint.
pub fn gex_orthogonal_sets(g: &GeaTable, s: &ExoSet) -> Vec<ElemSet> {
    let covers: Vec<ExoMap> = (0..g.len()).map(|e| exocentral_cover(g, s, e)).collect();
    g.nonzero()
        .subsets()
        .filter(|t| {
            let v: Vec<usize> = t.iter().collect();
            v.iter()
                .enumerate()
                .all(|(i, &a)| v[i + 1..].iter().all(|&b| covers[a].disjoint(&covers[b])))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CogeaReport {
    pub co1: bool,
    pub co2: bool,
    pub gex_complete_boolean: bool,
}

/// Orthosummability of exocentrally orthogonal families, and orthogonality
/// to their sums.
pub fn cogea_check(g: &GeaTable, s: &ExoSet) -> CogeaReport {
    let mut co1 = true;
    let mut co2 = true;
    for t in gex_orthogonal_sets(g, s) {
        let family: Vec<usize> = t.iter().collect();
        match g.orthosum(family.iter().copied()) {
            Some(total) if g.sup(g.partial_sums(&family)) == Some(total) => {
                let common = family.iter().fold(g.all(), |acc, &x| acc.intersection(g.perp_set(x)));
                if !common.is_subset(g.perp_set(total)) {
                    co2 = false;
                }
            }
            _ => co1 = false,
        }
    }
    CogeaReport {
        co1,
        co2,
        gex_complete_boolean: s.is_boolean_algebra(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b4, c3, chain, t3, trivial};

    #[test]
    fn fixture_sizes_match_brute_force() {
        for (g, size) in [(t3(), 2), (b4(), 4), (c3(), 2), (trivial(), 1), (chain(5), 2)] {
            let s = exocenter(&g);
            assert_eq!(s.len(), size);
            assert_eq!(s, exocenter_brute_force(&g));
        }
    }

    #[test]
    fn b4_boolean_operations() {
        let g = b4();
        let s = exocenter(&g);
        let pa = s.iter().find(|m| m.summand() == ElemSet::from_iter([0, 1])).unwrap().clone();
        let pb = s.iter().find(|m| m.summand() == ElemSet::from_iter([0, 2])).unwrap().clone();
        let ops = exo_boolean_ops(&g, &s, &pa, &pb).unwrap();
        assert_eq!(ops.complement, pb);
        assert!(ops.join.is_identity() && ops.disjoint && !ops.leq);
        assert!(s.is_boolean_algebra(&g));
        let bogus = ExoMap::from_image(&[0, 1, 1, 1]);
        assert_eq!(exo_boolean_ops(&g, &s, &bogus, &pa), Err(CoreError::NotInExocenter));
    }

    #[test]
    fn fixture_centers() {
        let centers = |g: &GeaTable| -> Vec<usize> { center(g, &exocenter(g)).unwrap().into_iter().map(|x| x.0).collect() };
        assert_eq!(centers(&b4()), vec![0, 1, 2, 3]);
        assert_eq!(centers(&c3()), vec![0, 2]);
        assert_eq!(centers(&t3()), vec![0]);
    }

    #[test]
    fn fixture_covers() {
        let g = b4();
        let s = exocenter(&g);
        assert_eq!(exocentral_cover(&g, &s, 1).summand(), ElemSet::from_iter([0, 1]));
        assert!(exocentral_cover(&g, &s, 0).is_zero());
        let c = c3();
        assert!(exocentral_cover(&c, &exocenter(&c), 1).is_identity());
    }

    #[test]
    fn fixtures_are_central_orthocomplete() {
        for g in [t3(), c3(), b4(), chain(4)] {
            let r = cogea_check(&g, &exocenter(&g));
            assert!(r.co1 && r.co2 && r.gex_complete_boolean);
        }
    }
}
