use gea_catalog::CatalogError;
use gea_core::CoreError;
use thiserror::Error;

/// Everything that maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("line {line}: conflicting equations {a} + {b} = {first} and {a} + {b} = {second}")]
    ConflictingEquation {
        line: usize,
        a: String,
        b: String,
        first: String,
        second: String,
    },
    #[error("line {line}, column {col}: unknown element `{name}`")]
    UnknownElement { line: usize, col: usize, name: String },
    #[error("no relation named `{name}` (available: {available})")]
    UnknownRelation { name: String, available: String },
    #[error("command `{0}` needs --relation")]
    MissingRelation(&'static str),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub type Result<T> = std::result::Result<T, CliError>;
