//! Per-class relevancy scores for every term.
//!
//! Three scorers are provided:
//!
//! * `tfidf_sum` adds up the tf-idf vectors of all documents in a class.
//!   High scores mean "frequent here", not necessarily "rare elsewhere".
//! * `lrp` decomposes a linear classifier's affine score onto terms
//!   (`w_ci * x_ki` plus an equal share `b_c / T` of the bias) and sums the
//!   decomposition over the class. Scores can be negative: those terms
//!   spoke against the class.
//! * `distinctive` compares, per word, the fraction of documents containing
//!   it inside the class (its TPR) against a pessimistic aggregate of the
//!   other classes' fractions (FPR = mean + standard deviation). The final
//!   score mixes a clipped difference with a capped rate quotient that
//!   saturates once the TPR is about three times the FPR.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::LinearModel;
use crate::error::{Error, Result};
use crate::preprocess::TokenizedDoc;
use crate::vectorize::{FeatureVector, Vocabulary};

/// Which scorer produced a [`ScoreTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    TfidfSum,
    Lrp,
    Distinctive,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::TfidfSum => "tfidf_sum",
            Method::Lrp => "lrp",
            Method::Distinctive => "distinctive",
        }
    }
}

/// Term-to-score mapping for one class under one method.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub class_name: String,
    pub method: Method,
    pub scores: BTreeMap<String, f64>,
}

#[derive(Serialize)]
struct TermScoreJson<'a> {
    term: &'a str,
    score: f64,
}

#[derive(Serialize)]
struct ScoreTableJson<'a> {
    class: &'a str,
    method: Method,
    scores: Vec<TermScoreJson<'a>>,
}

impl ScoreTable {
    /// Entries sorted by descending score, ties broken lexicographically.
    pub fn ranked(&self) -> Vec<(&str, f64)> {
        let mut entries: Vec<(&str, f64)> =
            self.scores.iter().map(|(t, &s)| (t.as_str(), s)).collect();
        entries.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| a.0.cmp(b.0))
        });
        entries
    }

    pub fn to_json_string(&self) -> String {
        let json = ScoreTableJson {
            class: &self.class_name,
            method: self.method,
            scores: self
                .ranked()
                .into_iter()
                .map(|(term, score)| TermScoreJson { term, score })
                .collect(),
        };
        serde_json::to_string_pretty(&json).expect("score table serializes")
    }
}

/// The `k` highest-scoring terms, descending; ties broken lexicographically.
pub fn top_k(table: &ScoreTable, k: usize) -> Vec<(String, f64)> {
    table
        .ranked()
        .into_iter()
        .take(k)
        .map(|(t, s)| (t.to_string(), s))
        .collect()
}

fn class_indices(labels: &[String], class: &str) -> Result<Vec<usize>> {
    let indices: Vec<usize> = labels
        .iter()
        .enumerate()
        .filter_map(|(i, l)| (l == class).then_some(i))
        .collect();
    if indices.is_empty() {
        return Err(Error::UnknownClass(class.to_string()));
    }
    Ok(indices)
}

/// Sums the tf-idf vectors of all documents labeled `class`. Terms absent
/// from every document of the class are omitted.
pub fn tfidf_sum(
    vectors: &[FeatureVector],
    labels: &[String],
    class: &str,
    vocab: &Vocabulary,
) -> Result<ScoreTable> {
    if vectors.len() != labels.len() {
        return Err(Error::LabelMismatch {
            labels: labels.len(),
            vectors: vectors.len(),
        });
    }
    let mut sums = vec![0.0f64; vocab.len()];
    for k in class_indices(labels, class)? {
        for &(i, v) in vectors[k].entries() {
            sums[i as usize] += v;
        }
    }
    let scores = sums
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s != 0.0)
        .map(|(i, &s)| (vocab.term(i as u32).to_string(), s))
        .collect();
    Ok(ScoreTable {
        class_name: class.to_string(),
        method: Method::TfidfSum,
        scores,
    })
}

/// Per-term relevance contributions of a single document for one class:
/// `w_ci * x_ki + b_c / T` for every term index.
pub fn lrp_document(vector: &FeatureVector, model: &LinearModel, class: &str) -> Result<Vec<f64>> {
    let ci = model.class_index(class)?;
    let t = model.n_features();
    let bias_share = model.bias(ci) / t as f64;
    let weights = model.weights(ci);
    let mut relevance = vec![bias_share; t];
    for &(i, v) in vector.entries() {
        relevance[i as usize] += weights[i as usize] * v;
    }
    Ok(relevance)
}

/// Aggregates the per-document score decomposition over all documents of a
/// class. Every term receives the bias share `b_c / T` once per class
/// document, so even terms absent from the class appear in the table.
pub fn lrp(
    vectors: &[FeatureVector],
    labels: &[String],
    model: &LinearModel,
    class: &str,
    vocab: &Vocabulary,
) -> Result<ScoreTable> {
    if vectors.len() != labels.len() {
        return Err(Error::LabelMismatch {
            labels: labels.len(),
            vectors: vectors.len(),
        });
    }
    model.check_vocabulary(vocab)?;
    let ci = model.class_index(class)?;
    let weights = model.weights(ci);
    let t = model.n_features();

    let members = class_indices(labels, class)?;
    let mut sums = vec![0.0f64; t];
    for &k in &members {
        for &(i, v) in vectors[k].entries() {
            sums[i as usize] += weights[i as usize] * v;
        }
    }
    let bias_total = members.len() as f64 * (model.bias(ci) / t as f64);
    let scores = sums
        .iter()
        .enumerate()
        .map(|(i, &s)| (vocab.term(i as u32).to_string(), s + bias_total))
        .collect();
    Ok(ScoreTable {
        class_name: class.to_string(),
        method: Method::Lrp,
        scores,
    })
}

/// Per-class fraction of documents containing any of the given surface
/// forms. Classes are reported in sorted order.
pub fn occurrence_rates(
    docs: &[TokenizedDoc],
    labels: &[String],
    forms: &[String],
) -> Vec<(String, f64)> {
    let mut classes: Vec<&String> = labels.iter().collect();
    classes.sort();
    classes.dedup();
    classes
        .into_iter()
        .map(|class| {
            let mut total = 0usize;
            let mut containing = 0usize;
            for (doc, label) in docs.iter().zip(labels) {
                if label != class {
                    continue;
                }
                total += 1;
                if doc.tokens.iter().any(|t| forms.iter().any(|f| f == t)) {
                    containing += 1;
                }
            }
            (class.clone(), containing as f64 / total.max(1) as f64)
        })
        .collect()
}

/// Knobs for the distinctive scorer. `epsilon` only guards the quotient
/// against division by zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinctiveConfig {
    pub epsilon: f64,
}

impl Default for DistinctiveConfig {
    fn default() -> Self {
        DistinctiveConfig { epsilon: 1e-8 }
    }
}

/// The three distinctive-score components for one (TPR, FPR) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinctiveParts {
    /// `max(TPR - FPR, 0)`
    pub diff: f64,
    /// `(min(max(z, 1), 4) - 1) / 3` with `z = TPR / max(FPR, epsilon)`
    pub quot: f64,
    /// `0.5 * (diff + quot)`
    pub dist: f64,
}

/// Evaluates the distinctive score directly from the two rates.
pub fn distinctive_score(tpr: f64, fpr: f64, epsilon: f64) -> DistinctiveParts {
    let diff = (tpr - fpr).max(0.0);
    let z = tpr / fpr.max(epsilon);
    let quot = (z.clamp(1.0, 4.0) - 1.0) / 3.0;
    let dist = 0.5 * (diff + quot);
    DistinctiveParts { diff, quot, dist }
}

/// Per-term presence rates for every class, computed once so each class's
/// table reuses the same matrix.
struct PresenceRates {
    classes: Vec<String>,
    /// term -> per-class TPR, class order matching `classes`.
    tpr: BTreeMap<String, Vec<f64>>,
}

fn presence_rates(docs: &[TokenizedDoc], labels: &[String]) -> Result<PresenceRates> {
    let mut classes: Vec<String> = labels.to_vec();
    classes.sort();
    classes.dedup();
    if classes.len() < 2 {
        return Err(Error::DistinctiveNeedsClasses);
    }
    let class_index: BTreeMap<&str, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_str(), i))
        .collect();
    let mut sizes = vec![0usize; classes.len()];
    let mut counts: BTreeMap<&str, Vec<u32>> = BTreeMap::new();
    for (doc, label) in docs.iter().zip(labels) {
        let ci = class_index[label.as_str()];
        sizes[ci] += 1;
        let mut seen: Vec<&str> = doc.tokens.iter().map(String::as_str).collect();
        seen.sort_unstable();
        seen.dedup();
        for term in seen {
            counts.entry(term).or_insert_with(|| vec![0; classes.len()])[ci] += 1;
        }
    }
    let tpr = counts
        .into_iter()
        .map(|(term, per_class)| {
            let rates = per_class
                .iter()
                .zip(&sizes)
                .map(|(&c, &n)| c as f64 / n.max(1) as f64)
                .collect();
            (term.to_string(), rates)
        })
        .collect();
    Ok(PresenceRates { classes, tpr })
}

/// FPR for the class at `ci`: mean plus population standard deviation of
/// the other classes' TPRs. Mean + std rather than max, so one tiny class
/// cannot dominate the estimate.
fn false_positive_rate(rates: &[f64], ci: usize) -> f64 {
    let others: Vec<f64> = rates
        .iter()
        .enumerate()
        .filter_map(|(i, &r)| (i != ci).then_some(r))
        .collect();
    let n = others.len() as f64;
    let mean = others.iter().sum::<f64>() / n;
    let var = others.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / n;
    mean + var.sqrt()
}

/// Distinctive tables for every class in one pass over the corpus.
pub fn distinctive_all(
    docs: &[TokenizedDoc],
    labels: &[String],
    config: &DistinctiveConfig,
) -> Result<Vec<ScoreTable>> {
    let rates = presence_rates(docs, labels)?;
    let tables = rates
        .classes
        .iter()
        .enumerate()
        .map(|(ci, class)| {
            let scores = rates
                .tpr
                .iter()
                .filter(|(_, per_class)| per_class[ci] > 0.0)
                .map(|(term, per_class)| {
                    let fpr = false_positive_rate(per_class, ci);
                    let parts = distinctive_score(per_class[ci], fpr, config.epsilon);
                    (term.clone(), parts.dist)
                })
                .collect();
            ScoreTable {
                class_name: class.clone(),
                method: Method::Distinctive,
                scores,
            }
        })
        .collect();
    Ok(tables)
}

/// Distinctive table for a single class.
pub fn distinctive(
    docs: &[TokenizedDoc],
    labels: &[String],
    class: &str,
    config: &DistinctiveConfig,
) -> Result<ScoreTable> {
    let tables = distinctive_all(docs, labels, config)?;
    tables
        .into_iter()
        .find(|t| t.class_name == class)
        .ok_or_else(|| Error::UnknownClass(class.to_string()))
}
