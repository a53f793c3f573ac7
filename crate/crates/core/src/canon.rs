//! Canonical forms under relabelings that fix the zero.
//!
//! Individualization-refinement search over ordered partitions. Leaves with
//! equal encodings yield automorphisms, which prune sibling branches lying in
//! the same orbit of the stabilizer of the current path.

use crate::gea::{GeaTable, NONE};

type Partition = Vec<Vec<usize>>;

fn cell_index(p: &Partition, n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (i, cell) in p.iter().enumerate() {
        for &x in cell {
            idx[x] = i;
        }
    }
    idx
}

fn refine(g: &GeaTable, mut p: Partition) -> Partition {
    let n = g.len();
    loop {
        let idx = cell_index(&p, n);
        let sig = |x: usize| {
            let mut v: Vec<(usize, usize)> = (0..n)
                .map(|y| (idx[y], g.sum(x, y).map_or(usize::MAX, |s| idx[s])))
                .collect();
            v.sort_unstable();
            (idx[x], v)
        };
        let mut keyed: Vec<_> = (0..n).map(|x| (sig(x), x)).collect();
        keyed.sort();
        let mut next: Partition = Vec::new();
        for i in 0..keyed.len() {
            if i == 0 || keyed[i].0 != keyed[i - 1].0 {
                next.push(Vec::new());
            }
            next.last_mut().unwrap().push(keyed[i].1);
        }
        if next.len() == p.len() {
            return next;
        }
        p = next;
    }
}

fn encode(g: &GeaTable, order: &[usize]) -> Vec<u8> {
    let n = g.len();
    let mut pos = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let mut code = Vec::with_capacity(n * n + 1);
    code.push(n as u8);
    for &x in order {
        for &y in order {
            code.push(g.sum(x, y).map_or(NONE, |s| pos[s] as u8));
        }
    }
    code
}

struct Search<'a> {
    g: &'a GeaTable,
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let next = uf[y];
        uf[y] = r;
        y = next;
    }
    r
}

impl Search<'_> {
    fn orbits_fixing(&self, path: &[usize]) -> Vec<usize> {
        let n = self.g.len();
        let mut uf: Vec<usize> = (0..n).collect();
        for a in &self.autos {
            if path.iter().all(|&v| a[v] == v) {
                for (x, &ax) in a.iter().enumerate() {
                    let (rx, ry) = (find(&mut uf, x), find(&mut uf, ax));
                    if rx != ry {
                        uf[rx] = ry;
                    }
                }
            }
        }
        (0..n).map(|x| find(&mut uf, x)).collect()
    }

    fn run(&mut self, p: Partition, path: &mut Vec<usize>) {
        let Some(target) = p.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = p.iter().map(|c| c[0]).collect();
            let code = encode(self.g, &order);
            match &self.best {
                Some((best, best_order)) if *best == code => {
                    let mut auto = vec![0; order.len()];
                    for i in 0..order.len() {
                        auto[order[i]] = best_order[i];
                    }
                    self.autos.push(auto);
                }
                Some((best, _)) if *best < code => {}
                _ => self.best = Some((code, order)),
            }
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &p[target].clone() {
            let orbit = self.orbits_fixing(path);
            if explored.iter().any(|&u| orbit[u] == orbit[v]) {
                continue;
            }
            explored.push(v);
            let mut child = p.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&x| x != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            path.push(v);
            self.run(refine(self.g, child), path);
            path.pop();
        }
    }
}

/// Canonical ordering of the elements: `order[i]` is the element placed at
/// position `i`. The zero always stays first.
pub fn canonical_order(g: &GeaTable) -> Vec<usize> {
    let n = g.len();
    let mut initial = vec![vec![0]];
    if n > 1 {
        initial.push((1..n).collect());
    }
    let mut s = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    s.run(refine(g, initial), &mut Vec::new());
    s.best.unwrap().1
}

/// A byte string that two models share exactly when they are isomorphic.
pub fn canonical_form(g: &GeaTable) -> Vec<u8> {
    encode(g, &canonical_order(g))
}

/// Hex rendering of the canonical form, used as a catalog key.
pub fn canonical_key(g: &GeaTable) -> String {
    canonical_form(g).iter().map(|b| format!("{b:02x}")).collect()
}

/// The model relabeled into canonical order, with names kept.
pub fn canonical_model(g: &GeaTable) -> GeaTable {
    let order = canonical_order(g);
    relabel(g, &order)
}

/// Relabels so that `order[i]` becomes element `i`.
pub fn relabel(g: &GeaTable, order: &[usize]) -> GeaTable {
    let n = g.len();
    let mut pos = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let mut table = vec![None; n * n];
    for (i, &x) in order.iter().enumerate() {
        for (j, &y) in order.iter().enumerate() {
            table[i * n + j] = g.sum(x, y).map(|s| pos[s]);
        }
    }
    let names = order.iter().map(|&x| g.name(x).to_string()).collect();
    GeaTable::from_table(names, &table).expect("relabeling preserves the axioms")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b4, c3, t3};

    #[test]
    fn isomorphic_relabelings_agree() {
        let g = GeaTable::build(&["0", "x", "y", "z"], "0", &[("y", "x", "z")]).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&b4()));
        assert_ne!(canonical_form(&c3()), canonical_form(&t3()));
    }

    #[test]
    fn canonical_model_is_a_fixed_point() {
        let m = canonical_model(&b4());
        assert_eq!(canonical_form(&m), encode(&m, &[0, 1, 2, 3]));
    }

    fn samples() -> Vec<GeaTable> {
        // The product of chains of lengths 3 and 2, with mixed-up names.
        let names = ["0", "u", "v", "w", "x", "y"].map(String::from).to_vec();
        let pairs = [(0, 0), (2, 1), (1, 0), (0, 1), (1, 1), (2, 0)];
        let mut table = vec![None; 36];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate() {
                table[i * 6 + j] = pairs.iter().position(|&p| p == (a + c, b + d));
            }
        }
        let product = GeaTable::from_table(names, &table).unwrap();
        vec![t3(), c3(), b4(), crate::fixtures::chain(6), product]
    }

    proptest::proptest! {
        #[test]
        fn key_ignores_labeling(idx in 0usize..5, seed in proptest::collection::vec(0usize..1000, 8)) {
            let all = samples();
            let g = &all[idx % all.len()];
            let mut rest: Vec<usize> = (1..g.len()).collect();
            // Fisher-Yates driven by the generated seed.
            for i in (1..rest.len()).rev() {
                rest.swap(i, seed[i] % (i + 1));
            }
            let mut order = vec![0];
            order.extend(rest);
            let h = relabel(g, &order);
            proptest::prop_assert_eq!(canonical_key(&h), canonical_key(g));
        }
    }
}
