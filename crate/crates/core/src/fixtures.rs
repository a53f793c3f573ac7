//! Small reference models used throughout the tests and docs.

use crate::gea::GeaTable;

/// The one-element model `{0}`.
pub fn trivial() -> GeaTable {
    GeaTable::build::<&str>(&["0"], "0", &[]).unwrap()
}

/// `{0, a, b}` with no nonzero sums.
pub fn t3() -> GeaTable {
    GeaTable::build::<&str>(&["0", "a", "b"], "0", &[]).unwrap()
}

/// The three-element chain `{0, 1, 2}` with `1 + 1 = 2`.
pub fn c3() -> GeaTable {
    GeaTable::build(&["0", "1", "2"], "0", &[("1", "1", "2")]).unwrap()
}

/// The four-element boolean algebra `{0, a, b, 1}` with `a + b = 1`.
pub fn b4() -> GeaTable {
    GeaTable::build(&["0", "a", "b", "1"], "0", &[("a", "b", "1")]).unwrap()
}

/// The chain `{0, 1, .., n-1}` with `i + j = i + j` whenever it fits.
pub fn chain(n: usize) -> GeaTable {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let table: Vec<Option<usize>> = (0..n * n)
        .map(|k| {
            let s = k / n + k % n;
            (s < n).then_some(s)
        })
        .collect();
    GeaTable::from_table(names, &table).unwrap()
}
