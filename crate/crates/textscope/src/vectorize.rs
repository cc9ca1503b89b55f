//! Vocabulary construction and sparse tf-idf feature vectors.
//!
//! Term frequency is the in-document token count divided by the document
//! length; it is weighted by the natural log of total documents over the
//! number of documents containing the term. No smoothing is applied: the
//! vocabulary is always built from the corpus being analyzed, so document
//! frequencies are at least one. There is no stopword list; a term present
//! in every document gets idf 0 and drops out of every vector.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::preprocess::TokenizedDoc;

/// Term/index mapping with per-term document frequencies.
///
/// Terms are sorted lexicographically so indices are deterministic.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(from = "VocabularyParts", into = "VocabularyParts")]
pub struct Vocabulary {
    terms: Vec<String>,
    doc_freq: Vec<u32>,
    n_docs: usize,
    index: HashMap<String, u32>,
}

/// Serialized form of [`Vocabulary`]; the lookup index is rebuilt on load.
#[derive(Serialize, Deserialize)]
struct VocabularyParts {
    terms: Vec<String>,
    doc_freq: Vec<u32>,
    n_docs: usize,
}

impl From<VocabularyParts> for Vocabulary {
    fn from(parts: VocabularyParts) -> Self {
        Vocabulary::from_parts(parts.terms, parts.doc_freq, parts.n_docs)
    }
}

impl From<Vocabulary> for VocabularyParts {
    fn from(vocab: Vocabulary) -> Self {
        VocabularyParts {
            terms: vocab.terms,
            doc_freq: vocab.doc_freq,
            n_docs: vocab.n_docs,
        }
    }
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn term(&self, index: u32) -> &str {
        &self.terms[index as usize]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn index_of(&self, term: &str) -> Option<u32> {
        self.index.get(term).copied()
    }

    pub fn doc_freq(&self, index: u32) -> u32 {
        self.doc_freq[index as usize]
    }

    /// Natural log of `n_docs / doc_freq`; zero for a term present in every
    /// document.
    pub fn idf(&self, index: u32) -> f64 {
        (self.n_docs as f64 / self.doc_freq[index as usize] as f64).ln()
    }

    /// Hex digest tying models and saved artifacts to this exact vocabulary.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.n_docs.to_le_bytes());
        for (term, df) in self.terms.iter().zip(&self.doc_freq) {
            hasher.update(term.as_bytes());
            hasher.update([0u8]);
            hasher.update(df.to_le_bytes());
        }
        let digest = hasher.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Debug dump: one `term<TAB>doc_freq<TAB>idf` row per term.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("term\tdoc_freq\tidf\n");
        for i in 0..self.terms.len() as u32 {
            out.push_str(&format!(
                "{}\t{}\t{:.6}\n",
                self.term(i),
                self.doc_freq(i),
                self.idf(i)
            ));
        }
        out
    }

    fn rebuild_index(&mut self) {
        self.index = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
    }

    /// Restores the lookup index after deserialization.
    pub fn from_parts(terms: Vec<String>, doc_freq: Vec<u32>, n_docs: usize) -> Self {
        let mut vocab = Vocabulary {
            terms,
            doc_freq,
            n_docs,
            index: HashMap::new(),
        };
        vocab.rebuild_index();
        vocab
    }
}

/// Sparse non-negative tf-idf vector of one document. Zero entries are
/// never stored; indices are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub doc_id: String,
    entries: Vec<(u32, f64)>,
}

impl FeatureVector {
    /// Builds a vector from raw entries: sorts by index, merges duplicates
    /// and drops non-positive values.
    pub fn new(doc_id: String, mut entries: Vec<(u32, f64)>) -> Self {
        entries.sort_by_key(|&(i, _)| i);
        let mut merged: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += v,
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|&(_, v)| v > 0.0);
        FeatureVector {
            doc_id,
            entries: merged,
        }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: u32) -> f64 {
        self.entries
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|pos| self.entries[pos].1)
            .unwrap_or(0.0)
    }

    /// Dot product with a dense weight vector.
    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|&(i, v)| dense[i as usize] * v)
            .sum()
    }

    /// Dot product with another sparse vector (both index-sorted).
    pub fn dot_sparse(&self, other: &FeatureVector) -> f64 {
        let mut sum = 0.0;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            match self.entries[a].0.cmp(&other.entries[b].0) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    sum += self.entries[a].1 * other.entries[b].1;
                    a += 1;
                    b += 1;
                }
            }
        }
        sum
    }
}

/// Builds the vocabulary over all documents. Every document counts toward
/// `n_docs`, including empty ones; a corpus with no tokens at all is an
/// error.
pub fn build_vocabulary(docs: &[TokenizedDoc]) -> Result<Vocabulary> {
    let mut doc_freq: BTreeMap<&str, u32> = BTreeMap::new();
    for doc in docs {
        let mut seen: Vec<&str> = doc.tokens.iter().map(String::as_str).collect();
        seen.sort_unstable();
        seen.dedup();
        for term in seen {
            *doc_freq.entry(term).or_insert(0) += 1;
        }
    }
    if doc_freq.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let (terms, freqs): (Vec<String>, Vec<u32>) = doc_freq
        .into_iter()
        .map(|(t, f)| (t.to_string(), f))
        .unzip();
    Ok(Vocabulary::from_parts(terms, freqs, docs.len()))
}

/// Transforms one document into its tf-idf vector. Out-of-vocabulary tokens
/// are dropped; term frequency is the token count divided by the document's
/// total token count. Zero-idf entries are omitted.
pub fn vectorize(doc: &TokenizedDoc, vocab: &Vocabulary) -> FeatureVector {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for token in &doc.tokens {
        if let Some(i) = vocab.index_of(token) {
            *counts.entry(i).or_insert(0) += 1;
        }
    }
    let len = doc.tokens.len() as f64;
    let entries = counts
        .into_iter()
        .filter_map(|(i, c)| {
            let value = (c as f64 / len) * vocab.idf(i);
            (value > 0.0).then_some((i, value))
        })
        .collect();
    FeatureVector {
        doc_id: doc.id.clone(),
        entries,
    }
}

/// Vectorizes every document, preserving order (one vector per document,
/// empty documents yield empty vectors).
pub fn vectorize_corpus(docs: &[TokenizedDoc], vocab: &Vocabulary) -> Vec<FeatureVector> {
    docs.iter().map(|d| vectorize(d, vocab)).collect()
}
