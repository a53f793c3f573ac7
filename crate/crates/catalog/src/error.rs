use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("requested size {requested} exceeds the configured limit {limit}")]
    LimitExceeded { requested: usize, limit: usize },
    #[error("unknown search predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("catalog file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] gea_core::CoreError),
}

pub type Result<T> = std::result::Result<T, CatalogError>;
