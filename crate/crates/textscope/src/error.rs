//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by any textscope operation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path} line {line}: {message}")]
    JsonLine {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("duplicate document id `{0}`")]
    DuplicateId(String),

    #[error("mixed corpus layout in {0}: contains both loose files and subdirectories")]
    MixedLayout(PathBuf),

    #[error("{0} does not look like an archive file: missing response.docs")]
    MissingArchiveDocs(PathBuf),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("need >= 2 classes, got {0}")]
    NeedTwoClasses(usize),

    #[error("distinctive scoring requires >= 2 classes")]
    DistinctiveNeedsClasses,

    #[error("unknown class `{0}`")]
    UnknownClass(String),

    #[error("unknown document id `{0}`")]
    UnknownDocument(String),

    #[error("got {labels} labels for {vectors} vectors")]
    LabelMismatch { labels: usize, vectors: usize },

    #[error("model was trained against a different vocabulary (model fingerprint {model}, vocabulary fingerprint {vocab})")]
    FingerprintMismatch { model: String, vocab: String },

    #[error("model file {path} has unsupported version {version}")]
    ModelVersion { path: PathBuf, version: u32 },

    #[error("nothing to draw: all scores are zero")]
    NothingToDraw,

    #[error("cannot highlight an empty document")]
    EmptyDocument,

    #[error("need at least {need} documents, got {got}")]
    TooFewDocuments { need: usize, got: usize },

    #[error("{0}")]
    InvalidConfig(String),

    #[error("{0}")]
    InvalidFilter(String),

    #[error("document groups overlap: `{0}` matches both filters")]
    OverlappingGroups(String),

    #[error("document group `{0}` is empty")]
    EmptyGroup(String),

    #[error("corpus is unlabeled; use the `cluster` command to discover groups first")]
    UnlabeledCorpus,

    #[error("no clusters found (all documents are noise)")]
    NoClusters,
}

pub type Result<T> = std::result::Result<T, Error>;
