//! Corpus exploration through relevant words.
//!
//! textscope extracts the words that characterize each class (or each
//! discovered cluster) of a text dataset and renders them as word clouds
//! and per-document relevance heatmaps. Three scorers are available:
//! summed tf-idf features, a relevance decomposition of a linear
//! classifier's score, and distinctive words ranked by how many documents
//! of a class contain them compared to other classes.
//!
//! The typical labeled-corpus flow:
//!
//! ```
//! use textscope::corpus::{Corpus, Document};
//! use textscope::preprocess::tokenize_corpus;
//! use textscope::relevance::{distinctive, top_k, DistinctiveConfig};
//!
//! let corpus = Corpus::from_documents(vec![
//!     Document { id: "1".into(), text: "tumor growth in lung tissue".into(),
//!                label: Some("lung".into()), pub_date: None },
//!     Document { id: "2".into(), text: "lung lesions and tumor cells".into(),
//!                label: Some("lung".into()), pub_date: None },
//!     Document { id: "3".into(), text: "glioma affects brain tissue".into(),
//!                label: Some("brain".into()), pub_date: None },
//!     Document { id: "4".into(), text: "brain scans show glioma cells".into(),
//!                label: Some("brain".into()), pub_date: None },
//! ]).unwrap();
//!
//! let docs = tokenize_corpus(&corpus);
//! let labels: Vec<String> = corpus.documents.iter()
//!     .map(|d| d.label.clone().unwrap())
//!     .collect();
//! let table = distinctive(&docs, &labels, "lung", &DistinctiveConfig::default()).unwrap();
//! let top = top_k(&table, 2);
//! assert_eq!(top[0].0, "lung");
//! ```
//!
//! Unlabeled corpora go through [`cluster`] first (kernel PCA + DBSCAN over
//! cosine distances); the discovered clusters then act as classes.
//!
//! The `textscope` binary wires these pieces into `analyze`, `cluster`,
//! `highlight`, `compare` and `bigrams` subcommands; the same entry points
//! are available programmatically in [`pipeline`]. Each capability also has
//! a runnable example under `examples/`.

pub mod classify;
pub mod cluster;
pub mod corpus;
pub mod error;
pub mod pipeline;
pub mod preprocess;
pub mod relevance;
pub mod synth;
pub mod vectorize;
pub mod viz;

pub use error::{Error, Result};
