use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Display strings are single-line so the
/// CLI can print them verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error in {context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("empty dataset")]
    EmptyDataset,
    #[error("missing column: {0}")]
    MissingColumn(&'static str),
    #[error("row {row}: missing cq_id")]
    MissingId { row: usize },
    #[error("duplicate cq_id: {0}")]
    DuplicateId(String),
    #[error("{cq_id}: empty text")]
    EmptyText { cq_id: String },
    #[error("{cq_id}: rating {value:?} outside the declared encoding")]
    InvalidRating { cq_id: String, value: String },
    #[error("{cq_id}: relevance {value:?} outside 1..4")]
    InvalidRelevance { cq_id: String, value: String },
    #[error("{cq_id}: invalid boolean {value:?} in column {column}")]
    InvalidBool {
        cq_id: String,
        column: &'static str,
        value: String,
    },
    #[error("unknown set: {0}")]
    UnknownSet(String),
    #[error("empty set: {0}")]
    EmptySet(String),

    #[error("{cq_id}: no root token")]
    NoRoot { cq_id: String },
    #[error("{cq_id}: multiple root tokens")]
    MultipleRoots { cq_id: String },
    #[error("{cq_id}: head out of range (token {token}, head {head})")]
    HeadOutOfRange { cq_id: String, token: usize, head: usize },
    #[error("{cq_id}: cyclic head references")]
    CyclicTree { cq_id: String },
    #[error("{cq_id}: annotation has no tokens")]
    NoTokens { cq_id: String },
    #[error("{cq_id}: duplicate primitive {value:?} in {field}")]
    DuplicatePrimitive {
        cq_id: String,
        field: &'static str,
        value: String,
    },
    #[error("unknown cq_id in {source_kind}: {cq_id}")]
    UnknownId { source_kind: &'static str, cq_id: String },
    #[error("cq_id mismatch: {expected} vs {found}")]
    IdMismatch { expected: String, found: String },

    #[error("{cq_id}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        cq_id: String,
        expected: usize,
        found: usize,
    },
    #[error("{cq_id}: non-finite entry at index {index}")]
    NonFinite { cq_id: String, index: usize },
    #[error("{cq_id}: zero vector")]
    ZeroVector { cq_id: String },
    #[error("missing embedding: {0}")]
    MissingEmbedding(String),
    #[error("missing annotation: {0}")]
    MissingAnnotation(String),

    #[error("empty text")]
    EmptyInput,
    #[error("{cq_id}: even number of raters ({raters}) admits tie votes")]
    EvenRaters { cq_id: String, raters: usize },
    #[error("incomplete rating matrix: {0}")]
    IncompleteMatrix(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("set {set_id} has {size} members, fewer than k = {k}")]
    SetSmallerThanK { set_id: String, size: usize, k: usize },
    #[error("fewer points ({points}) than clusters ({k})")]
    TooFewPoints { points: usize, k: usize },

    #[error("zero range: {0}")]
    ZeroRange(String),
    #[error("too few samples for {what}: {n}")]
    TooFewSamples { what: String, n: usize },
    #[error("constant target: {0}")]
    ConstantTarget(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        Error::Json {
            context: context.into(),
            source,
        }
    }

    /// Validation failures (bad input data) as opposed to environment failures.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io { .. })
    }
}
