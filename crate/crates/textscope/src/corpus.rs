//! Corpus ingestion: directory trees, JSONL files and archive-API JSON dumps.
//!
//! All loaders produce the same [`Corpus`] shape: documents sorted by id,
//! with an optional class label per document. Ingestion is lossless; empty
//! documents are kept and flagged further down the pipeline.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One text document. `label` is the class name for labeled corpora,
/// `pub_date` is carried along from archive files for date-range grouping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pub_date: Option<String>,
}

/// An ordered collection of documents plus the set of distinct labels.
///
/// Documents are sorted by id at construction so every downstream
/// floating-point reduction sees the same order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub documents: Vec<Document>,
    pub label_set: Vec<String>,
}

impl Corpus {
    /// Builds a corpus from raw documents: sorts by id, derives the label
    /// set, rejects duplicate ids.
    pub fn from_documents(mut documents: Vec<Document>) -> Result<Self> {
        documents.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in documents.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateId(pair[0].id.clone()));
            }
        }
        let label_set: Vec<String> = documents
            .iter()
            .filter_map(|d| d.label.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(Corpus {
            documents,
            label_set,
        })
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// True when every document carries a label and at least one label exists.
    pub fn is_labeled(&self) -> bool {
        !self.documents.is_empty() && self.documents.iter().all(|d| d.label.is_some())
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.documents
            .binary_search_by(|d| d.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.documents[i])
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a directory of `.txt` files.
///
/// Two layouts are accepted: loose `.txt` files (unlabeled corpus) or one
/// subdirectory per class containing `.txt` files (subdirectory name becomes
/// the label). Mixing both in the same directory is an error. Document ids
/// are the paths relative to `path`, with `/` separators.
pub fn load_dir(path: &Path) -> Result<Corpus> {
    let mut loose_files = Vec::new();
    let mut subdirs = Vec::new();
    let entries = fs::read_dir(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    for entry in entries {
        let entry = entry.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let p = entry.path();
        if p.is_dir() {
            subdirs.push(p);
        } else if p.extension().is_some_and(|e| e == "txt") {
            loose_files.push(p);
        }
    }
    if !loose_files.is_empty() && !subdirs.is_empty() {
        return Err(Error::MixedLayout(path.to_path_buf()));
    }

    let mut documents = Vec::new();
    if subdirs.is_empty() {
        for file in loose_files {
            let id = file
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            documents.push(Document {
                id,
                text: read_to_string(&file)?,
                label: None,
                pub_date: None,
            });
        }
    } else {
        for dir in subdirs {
            let label = dir
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            let entries = fs::read_dir(&dir).map_err(|source| Error::Io {
                path: dir.clone(),
                source,
            })?;
            for entry in entries {
                let entry = entry.map_err(|source| Error::Io {
                    path: dir.clone(),
                    source,
                })?;
                let p = entry.path();
                if p.is_file() && p.extension().is_some_and(|e| e == "txt") {
                    let name = p.file_name().unwrap_or_default().to_string_lossy();
                    documents.push(Document {
                        id: format!("{label}/{name}"),
                        text: read_to_string(&p)?,
                        label: Some(label.clone()),
                        pub_date: None,
                    });
                }
            }
        }
    }
    Corpus::from_documents(documents)
}

#[derive(Deserialize)]
struct JsonlRecord {
    id: Option<String>,
    text: Option<String>,
    label: Option<String>,
}

/// Loads a JSONL file: one JSON object per line with keys `id`, `text` and
/// an optional `label`. When `id` is missing the 1-based line number is used.
pub fn load_jsonl(path: &Path) -> Result<Corpus> {
    let content = read_to_string(path)?;
    let mut documents = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let lineno = lineno + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: JsonlRecord = serde_json::from_str(line).map_err(|e| Error::JsonLine {
            path: path.to_path_buf(),
            line: lineno,
            message: e.to_string(),
        })?;
        let text = record.text.ok_or_else(|| Error::JsonLine {
            path: path.to_path_buf(),
            line: lineno,
            message: "missing \"text\" field".into(),
        })?;
        documents.push(Document {
            id: record.id.unwrap_or_else(|| lineno.to_string()),
            text,
            label: record.label,
            pub_date: None,
        });
    }
    Corpus::from_documents(documents)
}

#[derive(Deserialize)]
struct ArchiveFile {
    response: Option<ArchiveResponse>,
}

#[derive(Deserialize)]
struct ArchiveResponse {
    docs: Option<Vec<ArchiveDoc>>,
}

#[derive(Deserialize)]
struct ArchiveDoc {
    #[serde(rename = "_id")]
    id: Option<String>,
    snippet: Option<String>,
    headline: Option<ArchiveHeadline>,
    pub_date: Option<String>,
}

/// The archive API serves headlines as `{"main": "..."}`; tolerate a plain
/// string as well.
#[derive(Deserialize)]
#[serde(untagged)]
enum ArchiveHeadline {
    Nested { main: Option<String> },
    Plain(String),
}

impl ArchiveHeadline {
    fn main(&self) -> Option<&str> {
        match self {
            ArchiveHeadline::Nested { main } => main.as_deref(),
            ArchiveHeadline::Plain(s) => Some(s.as_str()),
        }
    }
}

/// Loads a locally saved newspaper-archive JSON file (`response.docs[]`
/// entries with `snippet`, `headline` and `pub_date`). The snippet becomes
/// the document text, falling back to the headline when the snippet is
/// empty. Documents are unlabeled; `pub_date` is kept for date grouping.
pub fn load_nyt_archive(path: &Path) -> Result<Corpus> {
    let content = read_to_string(path)?;
    let parsed: ArchiveFile = serde_json::from_str(&content).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    let docs = parsed
        .response
        .and_then(|r| r.docs)
        .ok_or_else(|| Error::MissingArchiveDocs(path.to_path_buf()))?;

    let mut documents = Vec::new();
    for (i, doc) in docs.into_iter().enumerate() {
        let text = match doc.snippet.as_deref() {
            Some(s) if !s.is_empty() => s.to_string(),
            _ => doc
                .headline
                .as_ref()
                .and_then(|h| h.main())
                .unwrap_or_default()
                .to_string(),
        };
        documents.push(Document {
            id: doc.id.unwrap_or_else(|| format!("doc-{i:06}")),
            text,
            label: None,
            pub_date: doc.pub_date,
        });
    }
    Corpus::from_documents(documents)
}
