//! Finite generalized effect algebras stored as partial sum tables.
//!
//! Elements are indices `0..n` with the zero at index 0. A sum is either an
//! element index or undefined; undefined is an ordinary value here, not an
//! error.

use serde::{Deserialize, Serialize};

use crate::elemset::{ElemSet, MAX_ELEMS};
use crate::error::{Axiom, CoreError, Result};

pub(crate) const NONE: u8 = u8::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeaTable {
    names: Vec<String>,
    n: usize,
    sum: Vec<u8>,
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
    perp: Vec<ElemSet>,
    diff: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementPredicates {
    pub principal: bool,
    pub sharp: bool,
    pub atom: bool,
    pub has_top_of_interval: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetPredicates {
    pub order_ideal: bool,
    pub ideal: bool,
    pub sub_gea: bool,
    pub sup_inf_closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFlags {
    pub directed: bool,
    pub orthogonally_ordered: bool,
    pub is_ea: Option<usize>,
    pub lattice: bool,
    pub archimedean: bool,
    pub dedekind_orthocomplete: bool,
    pub orthocomplete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    /// `up[e]` is the set of `f` with `e <= f`.
    pub up: Vec<ElemSet>,
    pub atoms: Vec<usize>,
    pub maximal: Vec<usize>,
    pub meets: Vec<Vec<Option<usize>>>,
    pub joins: Vec<Vec<Option<usize>>>,
}

/// `E[0,p]` as a model of its own, with `embed[i]` the parent index of
/// element `i`.
#[derive(Clone, Debug)]
pub struct IntervalEa {
    pub table: GeaTable,
    pub embed: Vec<usize>,
    pub unit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSum {
    pub holds: bool,
    pub witness: Option<String>,
}

impl GeaTable {
    /// Builds a model from element names, the zero and equations `a + b = c`.
    /// Sums with zero and the mirrored equations are filled in automatically.
    pub fn build<S: AsRef<str>>(names: &[S], zero: &str, equations: &[(S, S, S)]) -> Result<Self> {
        let mut ordered: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if ordered.iter().any(|x| x == name) {
                return Err(CoreError::DuplicateElement(name.to_string()));
            }
            ordered.push(name.to_string());
        }
        let zpos = ordered
            .iter()
            .position(|x| x == zero)
            .ok_or_else(|| CoreError::UnknownElement(zero.to_string()))?;
        let z = ordered.remove(zpos);
        ordered.insert(0, z);
        let n = ordered.len();
        if n > MAX_ELEMS {
            return Err(CoreError::TooManyElements(n));
        }
        let index = |s: &str| {
            ordered
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| CoreError::UnknownElement(s.to_string()))
        };
        let mut table = vec![None; n * n];
        for e in 0..n {
            table[e] = Some(e);
            table[e * n] = Some(e);
        }
        for (a, b, c) in equations {
            let (a, b, c) = (index(a.as_ref())?, index(b.as_ref())?, index(c.as_ref())?);
            for (x, y) in [(a, b), (b, a)] {
                match table[x * n + y] {
                    None => table[x * n + y] = Some(c),
                    Some(old) if old == c => {}
                    Some(old) => {
                        if x == 0 || y == 0 {
                            return Err(CoreError::AxiomViolation {
                                axiom: Axiom::Zero,
                                witness: vec![ordered[x].clone(), ordered[y].clone(), ordered[c].clone()],
                            });
                        }
                        return Err(CoreError::ConflictingEquation {
                            a: ordered[x].clone(),
                            b: ordered[y].clone(),
                            first: ordered[old].clone(),
                            second: ordered[c].clone(),
                        });
                    }
                }
            }
        }
        Self::from_table(ordered, &table)
    }

    /// Validates a complete `n x n` table (row-major) whose zero is index 0.
    pub fn from_table(names: Vec<String>, table: &[Option<usize>]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(CoreError::UnknownElement("0".into()));
        }
        if n > MAX_ELEMS {
            return Err(CoreError::TooManyElements(n));
        }
        assert_eq!(table.len(), n * n, "sum table must be n x n");
        let sum: Vec<u8> = table.iter().map(|x| x.map_or(NONE, |v| v as u8)).collect();
        if let Some((axiom, w)) = axiom_violation(n, &sum) {
            return Err(CoreError::AxiomViolation {
                axiom,
                witness: w.iter().map(|&i| names[i].clone()).collect(),
            });
        }
        Ok(Self::from_valid(names, sum))
    }

    fn from_valid(names: Vec<String>, sum: Vec<u8>) -> Self {
        let n = names.len();
        let mut down = vec![ElemSet::EMPTY; n];
        let mut up = vec![ElemSet::EMPTY; n];
        let mut perp = vec![ElemSet::EMPTY; n];
        let mut diff = vec![NONE; n * n];
        for e in 0..n {
            for d in 0..n {
                let s = sum[e * n + d];
                if s != NONE {
                    let f = s as usize;
                    perp[e].insert(d);
                    up[e].insert(f);
                    down[f].insert(e);
                    diff[f * n + e] = d as u8;
                }
            }
        }
        GeaTable {
            names,
            n,
            sum,
            down,
            up,
            perp,
            diff,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn names_of(&self, elems: &[usize]) -> Vec<String> {
        elems.iter().map(|&e| self.names[e].clone()).collect()
    }

    pub fn set_names(&self, s: ElemSet) -> Vec<String> {
        s.iter().map(|e| self.names[e].clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn nonzero(&self) -> ElemSet {
        self.all().without(0)
    }

    pub fn sum(&self, e: usize, f: usize) -> Option<usize> {
        let s = self.sum[e * self.n + f];
        (s != NONE).then_some(s as usize)
    }

    /// The full table with `None` for undefined sums.
    pub fn sum_table(&self) -> Vec<Option<usize>> {
        self.sum.iter().map(|&s| (s != NONE).then_some(s as usize)).collect()
    }

    pub fn perp(&self, e: usize, f: usize) -> bool {
        self.perp[e].contains(f)
    }

    pub fn perp_set(&self, e: usize) -> ElemSet {
        self.perp[e]
    }

    pub fn leq(&self, e: usize, f: usize) -> bool {
        self.up[e].contains(f)
    }

    pub fn down(&self, e: usize) -> ElemSet {
        self.down[e]
    }

    pub fn up(&self, e: usize) -> ElemSet {
        self.up[e]
    }

    /// `f ⊖ e`, defined when `e <= f`.
    pub fn diff(&self, f: usize, e: usize) -> Option<usize> {
        let d = self.diff[f * self.n + e];
        (d != NONE).then_some(d as usize)
    }

    /// Left-to-right sum of a family; `None` if some partial sum is undefined.
    pub fn orthosum(&self, family: impl IntoIterator<Item = usize>) -> Option<usize> {
        family.into_iter().try_fold(0, |acc, x| self.sum(acc, x))
    }

    /// Sum of a finite family, checked to be independent of the summation
    /// order. Returns `None` if the family is not orthogonal.
    pub fn orthosum_family(&self, family: &[usize]) -> Result<Option<usize>> {
        let reference = self.orthosum(family.iter().copied());
        let mut order: Vec<usize> = family.to_vec();
        order.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        loop {
            if seen.insert(order.clone()) && self.orthosum(order.iter().copied()) != reference {
                return Err(CoreError::InternalInvariant(format!(
                    "sum of {:?} depends on the summation order",
                    self.names_of(family)
                )));
            }
            if !next_permutation(&mut order) || seen.len() > 5040 {
                break;
            }
        }
        Ok(reference)
    }

    pub fn upper_bounds(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(self.all(), |acc, x| acc.intersection(self.up[x]))
    }

    pub fn lower_bounds(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(self.all(), |acc, x| acc.intersection(self.down[x]))
    }

    pub fn sup(&self, s: ElemSet) -> Option<usize> {
        let ub = self.upper_bounds(s);
        ub.iter().find(|&u| ub.is_subset(self.up[u]))
    }

    pub fn inf(&self, s: ElemSet) -> Option<usize> {
        let lb = self.lower_bounds(s);
        lb.iter().find(|&l| lb.is_subset(self.down[l]))
    }

    pub fn meet(&self, e: usize, f: usize) -> Option<usize> {
        self.inf(ElemSet::singleton(e).with(f))
    }

    pub fn join(&self, e: usize, f: usize) -> Option<usize> {
        self.sup(ElemSet::singleton(e).with(f))
    }

    /// No nonzero common lower bound.
    pub fn disjoint(&self, e: usize, f: usize) -> bool {
        self.down[e].intersection(self.down[f]) == ElemSet::singleton(0)
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.n).find(|&t| self.down[t] == self.all())
    }

    pub fn is_atom(&self, e: usize) -> bool {
        e != 0 && self.down[e].len() == 2
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.is_atom(e)).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.up[e] == ElemSet::singleton(e)).collect()
    }

    pub fn order_report(&self) -> OrderReport {
        let pairs = |f: &dyn Fn(usize, usize) -> Option<usize>| {
            (0..self.n)
                .map(|e| (0..self.n).map(|g| f(e, g)).collect())
                .collect()
        };
        OrderReport {
            up: self.up.clone(),
            atoms: self.atoms(),
            maximal: self.maximal(),
            meets: pairs(&|e, f| self.meet(e, f)),
            joins: pairs(&|e, f| self.join(e, f)),
        }
    }

    /// `e, f <= p` and `e ⊥ f` imply `e ⊕ f <= p`.
    pub fn is_principal(&self, p: usize) -> bool {
        let d = self.down[p];
        d.iter().all(|e| {
            d.intersection(self.perp[e])
                .iter()
                .all(|f| self.leq(self.sum(e, f).unwrap(), p))
        })
    }

    /// The only element below `p` and orthogonal to `p` is 0.
    pub fn is_sharp(&self, p: usize) -> bool {
        self.down[p].intersection(self.perp[p]) == ElemSet::singleton(0)
    }

    pub fn element_predicates(&self, p: usize) -> ElementPredicates {
        ElementPredicates {
            principal: self.is_principal(p),
            sharp: self.is_sharp(p),
            atom: self.is_atom(p),
            has_top_of_interval: self.interval_ea(p).map(|i| i.table.top() == Some(i.unit)).unwrap_or(false),
        }
    }

    /// `E[0,p]` with the sum restricted to results below `p`.
    pub fn interval_ea(&self, p: usize) -> Result<IntervalEa> {
        let embed: Vec<usize> = self.down[p].iter().collect();
        let m = embed.len();
        let pos = |x: usize| embed.iter().position(|&y| y == x);
        let mut table = vec![None; m * m];
        for (i, &e) in embed.iter().enumerate() {
            for (j, &f) in embed.iter().enumerate() {
                if let Some(s) = self.sum(e, f) {
                    if self.leq(s, p) {
                        table[i * m + j] = pos(s);
                    }
                }
            }
        }
        let names = embed.iter().map(|&e| self.names[e].clone()).collect();
        let table = GeaTable::from_table(names, &table)
            .map_err(|err| CoreError::InternalInvariant(format!("interval below {} is not a GEA: {err}", self.names[p])))?;
        let unit = pos(p).unwrap();
        if table.top() != Some(unit) {
            return Err(CoreError::InternalInvariant(format!(
                "interval below {} does not have it as unit",
                self.names[p]
            )));
        }
        Ok(IntervalEa { table, embed, unit })
    }

    pub fn is_order_ideal(&self, s: ElemSet) -> bool {
        s.contains(0) && s.iter().all(|x| self.down[x].is_subset(s))
    }

    pub fn is_ideal(&self, s: ElemSet) -> bool {
        self.is_order_ideal(s) && self.sums_closed(s)
    }

    fn sums_closed(&self, s: ElemSet) -> bool {
        s.iter().all(|e| {
            s.intersection(self.perp[e])
                .iter()
                .all(|f| s.contains(self.sum(e, f).unwrap()))
        })
    }

    pub fn is_sub_gea(&self, s: ElemSet) -> bool {
        !s.is_empty()
            && self.sums_closed(s)
            && s.iter()
                .all(|t| s.intersection(self.down[t]).iter().all(|x| s.contains(self.diff(t, x).unwrap())))
    }

    pub fn subset_predicates(&self, s: ElemSet) -> SubsetPredicates {
        let sup_inf_closed = s.subsets().filter(|t| !t.is_empty()).all(|t| {
            self.sup(t).is_none_or(|x| s.contains(x)) && self.inf(t).is_none_or(|x| s.contains(x))
        });
        SubsetPredicates {
            order_ideal: self.is_order_ideal(s),
            ideal: self.is_ideal(s),
            sub_gea: self.is_sub_gea(s),
            sup_inf_closed,
        }
    }

    /// All ideals, in increasing bitmask order.
    pub fn ideals(&self) -> Vec<ElemSet> {
        self.nonzero()
            .subsets()
            .map(|s| s.with(0))
            .filter(|&s| self.is_ideal(s))
            .collect()
    }

    pub fn is_directed(&self) -> bool {
        (0..self.n).all(|e| (e..self.n).all(|f| !self.up[e].is_disjoint(self.up[f])))
    }

    /// Whenever everything orthogonal to `f` is orthogonal to `e`, `e <= f`.
    pub fn is_orthogonally_ordered(&self) -> bool {
        (0..self.n).all(|e| {
            (0..self.n).all(|f| !self.perp[f].is_subset(self.perp[e]) || self.leq(e, f))
        })
    }

    pub fn is_lattice(&self) -> bool {
        (0..self.n).all(|e| (e..self.n).all(|f| self.meet(e, f).is_some() && self.join(e, f).is_some()))
    }

    /// Every nonzero `e` has a finite isotropic index.
    pub fn is_archimedean(&self) -> bool {
        (1..self.n).all(|e| {
            let mut acc = e;
            for _ in 0..self.n {
                match self.sum(acc, e) {
                    Some(s) => acc = s,
                    None => return true,
                }
            }
            false
        })
    }

    /// Finite orthogonal multisets of nonzero elements, listed in
    /// nondecreasing element order. Repetition is bounded by the isotropic
    /// index, so the list is finite.
    pub fn orthogonal_multisets(&self) -> Vec<Vec<usize>> {
        fn go(g: &GeaTable, start: usize, acc: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            for x in start..g.n {
                if let Some(s) = g.sum(acc, x) {
                    cur.push(x);
                    go(g, x, s, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, 1, 0, &mut Vec::new(), &mut out);
        out
    }

    /// Sums of all subfamilies of an orthogonal family.
    pub fn partial_sums(&self, family: &[usize]) -> ElemSet {
        let mut reach = ElemSet::singleton(0);
        for &x in family {
            let mut next = reach;
            for r in reach {
                if let Some(s) = self.sum(r, x) {
                    next.insert(s);
                }
            }
            reach = next;
        }
        reach
    }

    pub fn structure_flags(&self) -> StructureFlags {
        let multisets = self.orthogonal_multisets();
        let summable = |m: &Vec<usize>| {
            let total = self.orthosum(m.iter().copied());
            total.is_some() && self.sup(self.partial_sums(m)) == total
        };
        let bounded = |m: &Vec<usize>| !self.upper_bounds(self.partial_sums(m)).is_empty();
        StructureFlags {
            directed: self.is_directed(),
            orthogonally_ordered: self.is_orthogonally_ordered(),
            is_ea: self.top(),
            lattice: self.is_lattice(),
            archimedean: self.is_archimedean(),
            dedekind_orthocomplete: multisets.iter().filter(|m| bounded(m)).all(summable),
            orthocomplete: multisets.iter().all(summable),
        }
    }

    /// Checks whether `E` is the internal direct sum of the given ideals.
    pub fn direct_sum_check(&self, ideals: &[ElemSet]) -> Result<DirectSum> {
        for &h in ideals {
            if !self.is_ideal(h) {
                return Err(CoreError::NotAnIdeal(format!("{:?}", self.set_names(h))));
            }
        }
        let mut counts = vec![0usize; self.n];
        let mut bad: Option<Vec<usize>> = None;
        fn go(g: &GeaTable, ideals: &[ElemSet], acc: usize, tuple: &mut Vec<usize>, counts: &mut [usize], bad: &mut Option<Vec<usize>>) {
            if bad.is_some() {
                return;
            }
            let Some((&first, rest)) = ideals.split_first() else {
                counts[acc] += 1;
                return;
            };
            for h in first {
                tuple.push(h);
                match g.sum(acc, h) {
                    Some(s) => go(g, rest, s, tuple, counts, bad),
                    None => *bad = Some(tuple.clone()),
                }
                tuple.pop();
            }
        }
        go(self, ideals, 0, &mut Vec::new(), &mut counts, &mut bad);
        if let Some(t) = bad {
            return Ok(DirectSum {
                holds: false,
                witness: Some(format!("components {:?} are not orthogonal", self.names_of(&t))),
            });
        }
        if let Some(e) = (0..self.n).find(|&e| counts[e] != 1) {
            return Ok(DirectSum {
                holds: false,
                witness: Some(format!("{} has {} decompositions", self.names[e], counts[e])),
            });
        }
        Ok(DirectSum {
            holds: true,
            witness: None,
        })
    }

    /// Every element of `p` is a finite orthogonal sum of members of `d`.
    pub fn is_orthodense(&self, d: ElemSet, p: ElemSet) -> bool {
        p.is_subset(self.orthosum_closure(d))
    }

    /// All sums of finite orthogonal families drawn from `d`.
    pub fn orthosum_closure(&self, d: ElemSet) -> ElemSet {
        let mut reach = ElemSet::singleton(0);
        loop {
            let mut next = reach;
            for r in reach {
                for x in d {
                    if let Some(s) = self.sum(r, x) {
                        next.insert(s);
                    }
                }
            }
            if next == reach {
                return reach;
            }
            reach = next;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// First axiom violation of a complete table, with a witness tuple.
pub(crate) fn axiom_violation(n: usize, sum: &[u8]) -> Option<(Axiom, Vec<usize>)> {
    let at = |e: usize, f: usize| {
        let s = sum[e * n + f];
        (s != NONE).then_some(s as usize)
    };
    for e in 0..n {
        for f in 0..n {
            if at(e, f) != at(f, e) {
                return Some((Axiom::Commutativity, vec![e, f]));
            }
        }
    }
    for e in 0..n {
        if at(e, 0) != Some(e) {
            return Some((Axiom::Zero, vec![e]));
        }
    }
    for d in 0..n {
        for e in 0..n {
            for f in e + 1..n {
                if at(d, e).is_some() && at(d, e) == at(d, f) {
                    return Some((Axiom::Cancellation, vec![d, e, f]));
                }
            }
        }
    }
    for e in 0..n {
        for f in 0..n {
            if at(e, f) == Some(0) && (e, f) != (0, 0) {
                return Some((Axiom::Positivity, vec![e, f]));
            }
        }
    }
    for d in 0..n {
        for e in 0..n {
            for f in 0..n {
                let Some(ef) = at(e, f) else { continue };
                let Some(lhs) = at(d, ef) else { continue };
                let rhs = at(d, e).and_then(|de| at(de, f));
                if rhs != Some(lhs) {
                    return Some((Axiom::Associativity, vec![d, e, f]));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b4, c3, t3};

    fn set(g: &GeaTable, names: &[&str]) -> ElemSet {
        names.iter().map(|x| g.index_of(x).unwrap()).collect()
    }

    #[test]
    fn rejects_idempotent_sum() {
        let err = GeaTable::build(&["0", "a"], "0", &[("a", "a", "a")]).unwrap_err();
        assert!(matches!(err, CoreError::AxiomViolation { axiom: Axiom::Cancellation, .. }), "{err}");
    }

    #[test]
    fn rejects_conflicting_equations() {
        let err = GeaTable::build(&["0", "a", "b", "c"], "0", &[("a", "a", "b"), ("a", "a", "c")]).unwrap_err();
        assert!(matches!(err, CoreError::ConflictingEquation { .. }));
    }

    #[test]
    fn zero_is_moved_to_front() {
        let g = GeaTable::build(&["x", "z"], "z", &[]).unwrap();
        assert_eq!(g.names(), &["z".to_string(), "x".to_string()]);
    }

    #[test]
    fn fixture_orders() {
        let c = c3();
        assert_eq!(c.atoms(), vec![1]);
        assert_eq!(c.diff(2, 1), Some(1));
        let t = t3();
        assert_eq!(t.atoms(), vec![1, 2]);
        assert!(!t.leq(1, 2) && !t.leq(2, 1));
        assert_eq!(t.join(1, 2), None);
        assert_eq!(t.meet(1, 2), Some(0));
    }

    #[test]
    fn fixture_sums() {
        let c = c3();
        assert_eq!(c.orthosum_family(&[1, 1]).unwrap(), Some(2));
        assert_eq!(c.orthosum_family(&[]).unwrap(), Some(0));
        assert_eq!(t3().orthosum_family(&[1, 2]).unwrap(), None);
    }

    #[test]
    fn fixture_element_predicates() {
        let c = c3();
        let p = c.element_predicates(1);
        // 1 ⊕ 1 is defined, so 1 is neither principal nor sharp.
        assert!(!p.principal && !p.sharp);
        let b = b4();
        let p = b.element_predicates(1);
        assert!(p.principal && p.sharp && p.atom);
    }

    #[test]
    fn fixture_intervals() {
        let c = c3();
        assert_eq!(c.interval_ea(2).unwrap().table, c);
        let i = c.interval_ea(1).unwrap();
        assert_eq!(i.table.len(), 2);
        assert_eq!(i.table.sum(1, 1), None);
        assert_eq!(b4().interval_ea(1).unwrap().embed, vec![0, 1]);
    }

    #[test]
    fn fixture_subsets() {
        let b = b4();
        let p = b.subset_predicates(set(&b, &["0", "a"]));
        assert!(p.ideal && p.order_ideal && p.sub_gea);
        let c = c3();
        let p = c.subset_predicates(set(&c, &["0", "1"]));
        assert!(p.order_ideal && !p.ideal);
    }

    #[test]
    fn fixture_structure() {
        let f = t3().structure_flags();
        assert!(!f.directed && !f.orthogonally_ordered && f.is_ea.is_none());
        let f = c3().structure_flags();
        assert!(f.directed && f.lattice && f.is_ea == Some(2));
        let f = b4().structure_flags();
        assert!(f.orthogonally_ordered && f.is_ea == Some(3));
        for g in [t3(), c3(), b4()] {
            let f = g.structure_flags();
            assert!(f.archimedean && f.orthocomplete && f.dedekind_orthocomplete);
        }
    }

    #[test]
    fn fixture_direct_sums() {
        let b = b4();
        let (a, bb) = (set(&b, &["0", "a"]), set(&b, &["0", "b"]));
        assert!(b.direct_sum_check(&[a, bb]).unwrap().holds);
        assert!(b.direct_sum_check(&[b.all()]).unwrap().holds);
        let t = t3();
        let r = t.direct_sum_check(&[set(&t, &["0", "a"]), set(&t, &["0", "b"])]).unwrap();
        assert!(!r.holds && r.witness.is_some());
        let c = c3();
        assert!(matches!(c.direct_sum_check(&[set(&c, &["0", "1"])]), Err(CoreError::NotAnIdeal(_))));
    }

    #[test]
    fn fixture_orthodensity() {
        let c = c3();
        assert!(c.is_orthodense(set(&c, &["0", "1"]), c.all()));
        let b = b4();
        assert!(!b.is_orthodense(set(&b, &["0", "a"]), b.all()));
    }

    #[test]
    fn ideals_of_b4() {
        let b = b4();
        assert_eq!(b.ideals().len(), 4);
    }
}
