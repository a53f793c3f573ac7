//! Exhaustive catalog of small generalized effect algebras.
//!
//! Models are enumerated up to isomorphism, each paired with every
//! equivalence relation that isolates zero. The property suite and the
//! counterexample search run over that catalog.

pub mod enumerate;
pub mod error;
pub mod persist;
pub mod relations;
pub mod search;
pub mod suite;

pub use enumerate::{enumerate_geas, enumerate_geas_with, CatalogModel, DEFAULT_LIMIT};
pub use error::{CatalogError, Result};
pub use persist::{CatalogEntry, CatalogHeader};
pub use relations::{enumerate_relations, RelationRecord};
pub use search::{search_counterexample, Finding, SearchOutcome, Witness, PREDICATES};
pub use suite::{run_theorem_suite, SuiteOptions, SuiteReport};
