//! Backtracking enumeration of finite GEAs up to isomorphism.
//!
//! Every finite GEA admits a labeling along a linear extension of its order,
//! and in such a labeling a sum of two nonzero elements is strictly above
//! both. The search therefore only fills cells `(i, j)` with `1 <= i <= j`
//! and values in `(max(i, j), n)` or undefined, pruning on cancellation and
//! on associativity triples whose cells are already fixed.

use std::collections::BTreeSet;

use gea_core::canon::canonical_form;
use gea_core::GeaTable;
use rayon::prelude::*;

use crate::error::{CatalogError, Result};

/// Largest size accepted unless a caller raises it.
pub const DEFAULT_LIMIT: usize = 6;

/// Hard ceiling regardless of configuration.
const HARD_LIMIT: usize = 8;

const UNDEF: u8 = u8::MAX;
const UNSET: u8 = u8::MAX - 1;

/// One isomorphism class, stored in canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogModel {
    pub key: String,
    pub gea: GeaTable,
}

impl CatalogModel {
    pub fn n(&self) -> usize {
        self.gea.len()
    }
}

/// Element names used for enumerated models: `0`, then `a`, `b`, ...
pub fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i == 0 { "0".to_string() } else { ((b'a' + (i as u8 - 1)) as char).to_string() })
        .collect()
}

/// Rebuilds a model from its canonical form bytes.
pub fn model_from_form(form: &[u8]) -> Result<GeaTable> {
    let n = *form.first().ok_or_else(|| CatalogError::Format("empty canonical form".into()))? as usize;
    if form.len() != n * n + 1 {
        return Err(CatalogError::Format(format!("canonical form of length {} for n={n}", form.len())));
    }
    let table: Vec<Option<usize>> = form[1..].iter().map(|&b| (b != UNDEF).then_some(b as usize)).collect();
    Ok(GeaTable::from_table(default_names(n), &table)?)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// All GEAs with at most `max_n` elements, ordered by `(n, key)`.
pub fn enumerate_geas(max_n: usize) -> Result<Vec<CatalogModel>> {
    enumerate_geas_with(max_n, DEFAULT_LIMIT, None)
}

/// Like [`enumerate_geas`] with an explicit size limit and worker count.
pub fn enumerate_geas_with(max_n: usize, limit: usize, jobs: Option<usize>) -> Result<Vec<CatalogModel>> {
    let limit = limit.min(HARD_LIMIT);
    if max_n > limit {
        return Err(CatalogError::LimitExceeded { requested: max_n, limit });
    }
    let run = || -> Result<Vec<CatalogModel>> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for form in forms_of_size(n) {
                let gea = model_from_form(&form)?;
                out.push(CatalogModel { key: hex(&form), gea });
            }
        }
        Ok(out)
    };
    match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| CatalogError::Format(e.to_string()))?
            .install(run),
        None => run(),
    }
}

/// Canonical forms of all GEAs with exactly `n` elements, sorted.
fn forms_of_size(n: usize) -> BTreeSet<Vec<u8>> {
    let search = Search::new(n);
    let prefixes = search.prefixes(PREFIX_CELLS.min(search.cells.len()));
    prefixes
        .into_par_iter()
        .map(|(table, depth)| {
            let mut found = BTreeSet::new();
            let mut table = table;
            search.dfs(&mut table, depth, &mut found);
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Number of leading cells fixed before work is split across workers.
const PREFIX_CELLS: usize = 3;

struct Search {
    n: usize,
    cells: Vec<(usize, usize)>,
}

impl Search {
    fn new(n: usize) -> Self {
        // Cells in order of their larger coordinate, so that value ranges
        // shrink as the search deepens.
        let mut cells = Vec::new();
        for j in 1..n {
            for i in 1..=j {
                cells.push((i, j));
            }
        }
        Search { n, cells }
    }

    fn empty_table(&self) -> Vec<u8> {
        let n = self.n;
        let mut t = vec![UNSET; n * n];
        for e in 0..n {
            t[e] = e as u8;
            t[e * n] = e as u8;
        }
        t
    }

    fn choices(&self, cell: usize) -> impl Iterator<Item = u8> {
        let (_, j) = self.cells[cell];
        std::iter::once(UNDEF).chain((j + 1..self.n).map(|v| v as u8))
    }

    fn set(&self, t: &mut [u8], cell: usize, v: u8) {
        let (i, j) = self.cells[cell];
        t[i * self.n + j] = v;
        t[j * self.n + i] = v;
    }

    /// Partial tables with the first `depth` cells filled and still
    /// consistent, in a fixed order.
    fn prefixes(&self, depth: usize) -> Vec<(Vec<u8>, usize)> {
        let mut level = vec![self.empty_table()];
        for cell in 0..depth {
            let mut next = Vec::new();
            for t in &level {
                for v in self.choices(cell) {
                    let mut t2 = t.clone();
                    self.set(&mut t2, cell, v);
                    if self.consistent(&t2, cell) {
                        next.push(t2);
                    }
                }
            }
            level = next;
        }
        level.into_iter().map(|t| (t, depth)).collect()
    }

    fn dfs(&self, t: &mut Vec<u8>, cell: usize, found: &mut BTreeSet<Vec<u8>>) {
        if cell == self.cells.len() {
            let table: Vec<Option<usize>> = t.iter().map(|&b| (b != UNDEF).then_some(b as usize)).collect();
            if let Ok(g) = GeaTable::from_table(default_names(self.n), &table) {
                found.insert(canonical_form(&g));
            }
            return;
        }
        for v in self.choices(cell) {
            self.set(t, cell, v);
            if self.consistent(t, cell) {
                self.dfs(t, cell + 1, found);
            }
        }
        self.set(t, cell, UNSET);
    }

    /// Checks cancellation in the rows touched by `cell` and every
    /// associativity triple whose cells are all fixed.
    fn consistent(&self, t: &[u8], cell: usize) -> bool {
        let n = self.n;
        let (i, j) = self.cells[cell];
        let v = t[i * n + j];
        if v != UNDEF {
            for r in [i, j] {
                let other = if r == i { j } else { i };
                if (0..n).any(|c| c != other && t[r * n + c] == v) {
                    return false;
                }
            }
        }
        let at = |a: usize, b: usize| t[a * n + b];
        for d in 1..n {
            for e in 1..n {
                for f in 1..n {
                    let ef = at(e, f);
                    if ef == UNSET || ef == UNDEF {
                        continue;
                    }
                    let lhs = at(d, ef as usize);
                    if lhs == UNSET || lhs == UNDEF {
                        continue;
                    }
                    match at(d, e) {
                        UNSET => {}
                        UNDEF => return false,
                        de => match at(de as usize, f) {
                            UNSET => {}
                            r if r != lhs => return false,
                            _ => {}
                        },
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every symmetric table with a fixed zero row, filtered by the axiom
    /// checker and deduplicated by canonical form.
    fn naive_count(n: usize) -> usize {
        let cells: Vec<(usize, usize)> = (1..n).flat_map(|j| (1..=j).map(move |i| (i, j))).collect();
        let base = n + 1;
        let total = base.pow(cells.len() as u32);
        let mut forms = BTreeSet::new();
        for code in 0..total {
            let mut table = vec![None; n * n];
            for e in 0..n {
                table[e] = Some(e);
                table[e * n] = Some(e);
            }
            let mut c = code;
            for &(i, j) in &cells {
                let v = c % base;
                c /= base;
                let val = (v < n).then_some(v);
                table[i * n + j] = val;
                table[j * n + i] = val;
            }
            if let Ok(g) = GeaTable::from_table(default_names(n), &table) {
                forms.insert(canonical_form(&g));
            }
        }
        forms.len()
    }

    fn count(models: &[CatalogModel], n: usize) -> usize {
        models.iter().filter(|m| m.n() == n).count()
    }

    #[test]
    fn small_counts_match_naive_oracle() {
        let models = enumerate_geas(4).unwrap();
        for n in 1..=4 {
            assert_eq!(count(&models, n), naive_count(n), "n={n}");
        }
        assert_eq!(count(&models, 1), 1);
        assert_eq!(count(&models, 2), 1);
        assert_eq!(count(&models, 3), 2);
    }

    #[test]
    fn ordered_by_size_then_key_without_duplicates() {
        let models = enumerate_geas(5).unwrap();
        for w in models.windows(2) {
            assert!((w[0].n(), &w[0].key) < (w[1].n(), &w[1].key));
        }
        for m in &models {
            assert_eq!(hex(&canonical_form(&m.gea)), m.key);
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let a = enumerate_geas_with(5, DEFAULT_LIMIT, Some(1)).unwrap();
        let b = enumerate_geas_with(5, DEFAULT_LIMIT, Some(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn size_limit_is_enforced() {
        assert!(matches!(enumerate_geas(7), Err(CatalogError::LimitExceeded { requested: 7, limit: 6 })));
        assert!(matches!(
            enumerate_geas_with(9, 9, None),
            Err(CatalogError::LimitExceeded { requested: 9, limit: 8 })
        ));
    }
}
