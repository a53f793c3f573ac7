//! Line-delimited catalog files.
//!
//! The first line is a [`CatalogHeader`], every further line one
//! [`CatalogEntry`]. Files are only ever appended to; a rerun with the same
//! parameters skips keys already present and drops a trailing partial line
//! left by an interrupted run.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use gea_core::exocenter::{cogea_check, exocenter};
use gea_core::gea::StructureFlags;
use gea_core::GeaTable;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{default_names, enumerate_geas_with, CatalogModel};
use crate::error::{CatalogError, Result};
use crate::relations::{enumerate_relations, RelationRecord};

pub const FORMAT_VERSION: u32 = 1;
pub const GENERATOR_VERSION: &str = concat!("gea-catalog ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogHeader {
    pub format_version: u32,
    pub max_n: usize,
    pub generator_version: String,
}

impl CatalogHeader {
    pub fn new(max_n: usize) -> Self {
        CatalogHeader {
            format_version: FORMAT_VERSION,
            max_n,
            generator_version: GENERATOR_VERSION.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFlags {
    #[serde(flatten)]
    pub structure: StructureFlags,
    pub exocenter_size: usize,
    pub centrally_orthocomplete: bool,
    pub sk_count: usize,
    pub der_count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub key: String,
    pub n: usize,
    /// Row-major sums, `null` where undefined.
    pub sum_table: Vec<Vec<Option<usize>>>,
    pub flags: EntryFlags,
    pub relations: Vec<RelationRecord>,
    /// Wall time spent building the entry. Not persisted, so files stay
    /// reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl PartialEq for CatalogEntry {
    fn eq(&self, other: &Self) -> bool {
        (&self.key, self.n, &self.sum_table, &self.flags, &self.relations)
            == (&other.key, other.n, &other.sum_table, &other.flags, &other.relations)
    }
}

impl CatalogEntry {
    pub fn build(model: &CatalogModel) -> Result<Self> {
        let start = Instant::now();
        let g = &model.gea;
        let exo = exocenter(g);
        let cogea = cogea_check(g, &exo);
        let relations = enumerate_relations(g)?;
        let n = g.len();
        let sum_table = (0..n).map(|e| (0..n).map(|f| g.sum(e, f)).collect()).collect();
        Ok(CatalogEntry {
            key: model.key.clone(),
            n,
            sum_table,
            flags: EntryFlags {
                structure: g.structure_flags(),
                exocenter_size: exo.len(),
                centrally_orthocomplete: cogea.co1 && cogea.co2,
                sk_count: relations.iter().filter(|r| r.sk).count(),
                der_count: relations.iter().filter(|r| r.der).count(),
            },
            relations,
            elapsed: Some(start.elapsed()),
        })
    }

    pub fn gea(&self) -> Result<GeaTable> {
        let table: Vec<Option<usize>> = self.sum_table.iter().flatten().copied().collect();
        if table.len() != self.n * self.n {
            return Err(CatalogError::Format(format!("entry {} has a malformed sum table", self.key)));
        }
        Ok(GeaTable::from_table(default_names(self.n), &table)?)
    }
}

/// Builds entries for all models, in parallel, keeping the input order.
pub fn build_entries(models: &[CatalogModel]) -> Result<Vec<CatalogEntry>> {
    models.par_iter().map(CatalogEntry::build).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WriteSummary {
    pub written: usize,
    pub skipped: usize,
}

/// Enumerates up to `max_n` elements and appends every missing entry to
/// `path`, creating the file if needed.
pub fn write_catalog(path: &Path, max_n: usize, limit: usize, jobs: Option<usize>) -> Result<WriteSummary> {
    let header = CatalogHeader::new(max_n);
    let existing = prepare_file(path, &header)?;
    let models = enumerate_geas_with(max_n, limit, jobs)?;
    let todo: Vec<CatalogModel> = models.into_iter().filter(|m| !existing.contains(&m.key)).collect();
    let skipped = existing.len();
    let entries = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| CatalogError::Format(e.to_string()))?
            .install(|| build_entries(&todo))?,
        None => build_entries(&todo)?,
    };
    let mut file = OpenOptions::new().append(true).open(path)?;
    for entry in &entries {
        writeln!(file, "{}", serde_json::to_string(entry)?)?;
    }
    file.flush()?;
    Ok(WriteSummary {
        written: entries.len(),
        skipped,
    })
}

/// Writes a header into a new file, or validates the header of an existing
/// one and returns the keys it already holds.
fn prepare_file(path: &Path, header: &CatalogHeader) -> Result<BTreeSet<String>> {
    if !path.exists() || std::fs::metadata(path)?.len() == 0 {
        let mut f = File::create(path)?;
        writeln!(f, "{}", serde_json::to_string(header)?)?;
        return Ok(BTreeSet::new());
    }
    truncate_partial_line(path)?;
    let (found, entries) = read_catalog(path)?;
    if found != *header {
        return Err(CatalogError::Format(format!(
            "existing header {} does not match requested {}",
            serde_json::to_string(&found)?,
            serde_json::to_string(header)?
        )));
    }
    Ok(entries.into_iter().map(|e| e.key).collect())
}

fn truncate_partial_line(path: &Path) -> Result<()> {
    let bytes = std::fs::read(path)?;
    if bytes.last() == Some(&b'\n') {
        return Ok(());
    }
    let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    let f = OpenOptions::new().write(true).open(path)?;
    f.set_len(keep as u64)?;
    let mut f = f;
    f.seek(SeekFrom::End(0))?;
    Ok(())
}

/// Reads a catalog file back.
pub fn read_catalog(path: &Path) -> Result<(CatalogHeader, Vec<CatalogEntry>)> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    let header: CatalogHeader = match lines.next() {
        Some(line) => serde_json::from_str(&line?)?,
        None => return Err(CatalogError::Format("missing header line".into())),
    };
    let mut entries = Vec::new();
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            entries.push(serde_json::from_str(&line)?);
        }
    }
    Ok((header, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_geas, DEFAULT_LIMIT};

    #[test]
    fn write_then_read_returns_the_same_entries() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.jsonl");
        let summary = write_catalog(&path, 4, DEFAULT_LIMIT, Some(2)).unwrap();
        let expected = build_entries(&enumerate_geas(4).unwrap()).unwrap();
        assert_eq!(summary.written, expected.len());
        let (header, entries) = read_catalog(&path).unwrap();
        assert_eq!(header, CatalogHeader::new(4));
        assert_eq!(entries, expected);
        for e in &entries {
            let g = e.gea().unwrap();
            assert_eq!(gea_core::canon::canonical_key(&g), e.key);
        }
    }

    #[test]
    fn rerun_resumes_after_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.jsonl");
        write_catalog(&path, 4, DEFAULT_LIMIT, None).unwrap();
        let full = std::fs::read(&path).unwrap();
        // Cut the file in the middle of its last entry.
        let cut = full.len() - 10;
        std::fs::write(&path, &full[..cut]).unwrap();
        let summary = write_catalog(&path, 4, DEFAULT_LIMIT, None).unwrap();
        assert_eq!(summary.written, 1);
        assert_eq!(std::fs::read(&path).unwrap(), full);
        let again = write_catalog(&path, 4, DEFAULT_LIMIT, None).unwrap();
        assert_eq!(again.written, 0);
    }

    #[test]
    fn mismatched_header_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.jsonl");
        write_catalog(&path, 3, DEFAULT_LIMIT, None).unwrap();
        assert!(matches!(write_catalog(&path, 4, DEFAULT_LIMIT, None), Err(CatalogError::Format(_))));
    }
}
