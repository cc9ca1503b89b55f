//! Per-document relevance heatmaps as standalone HTML.
//!
//! Every token is wrapped in a span whose background opacity is
//! proportional to the magnitude of its relevance. For the classifier
//! variant a term's contribution `w_ci * x_ki` is split equally over its
//! occurrences and each token carries an equal share `b_c / L` of the
//! bias (L = token count), so the per-token relevances of a document sum
//! exactly to the affine classification score. The tf-idf variant uses
//! `x_ki` directly and is single-hued.

use std::collections::HashMap;

use crate::classify::LinearModel;
use crate::error::{Error, Result};
use crate::preprocess::TokenizedDoc;
use crate::vectorize::{vectorize, Vocabulary};

const POSITIVE_RGB: (u8, u8, u8) = (33, 102, 172);
const NEGATIVE_RGB: (u8, u8, u8) = (178, 24, 43);

fn html_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&#39;")
}

fn render(doc_id: &str, heading: &str, tokens: &[String], relevance: &[f64]) -> String {
    let max_abs = relevance.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let mut body = String::new();
    for (token, &r) in tokens.iter().zip(relevance) {
        let alpha = if max_abs > 0.0 {
            r.abs() / max_abs
        } else {
            0.0
        };
        let (cr, cg, cb) = if r < 0.0 { NEGATIVE_RGB } else { POSITIVE_RGB };
        body.push_str(&format!(
            "<span title=\"{r:.6}\" style=\"background-color: rgba({cr},{cg},{cb},{alpha:.3})\">{}</span> ",
            html_escape(token),
        ));
    }
    format!(
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>{title}</title>\n\
         <style>\nbody {{ font-family: sans-serif; max-width: 55em; margin: 2em auto; line-height: 1.9; }}\n\
         h1 {{ font-size: 1.1em; }}\nspan {{ padding: 0 2px; border-radius: 3px; }}\n</style>\n\
         </head>\n<body>\n<h1>{heading}</h1>\n<p>{body}</p>\n</body>\n</html>\n",
        title = html_escape(doc_id),
        heading = html_escape(heading),
        body = body.trim_end(),
    )
}

fn occurrence_counts(doc: &TokenizedDoc, vocab: &Vocabulary) -> HashMap<u32, u32> {
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for token in &doc.tokens {
        if let Some(i) = vocab.index_of(token) {
            *counts.entry(i).or_insert(0) += 1;
        }
    }
    counts
}

/// Classifier relevance of each token in order: the term contribution split
/// over that term's occurrences, plus an equal bias share per token. The
/// values sum to the class's affine score for the document.
pub fn lrp_token_relevances(
    doc: &TokenizedDoc,
    model: &LinearModel,
    class: &str,
    vocab: &Vocabulary,
) -> Result<Vec<f64>> {
    if doc.tokens.is_empty() {
        return Err(Error::EmptyDocument);
    }
    model.check_vocabulary(vocab)?;
    let ci = model.class_index(class)?;
    let weights = model.weights(ci);
    let vector = vectorize(doc, vocab);
    let counts = occurrence_counts(doc, vocab);
    let bias_share = model.bias(ci) / doc.tokens.len() as f64;

    Ok(doc
        .tokens
        .iter()
        .map(|token| {
            let term = vocab.index_of(token).map_or(0.0, |i| {
                weights[i as usize] * vector.get(i) / counts[&i] as f64
            });
            term + bias_share
        })
        .collect())
}

/// Per-token tf-idf values (a term's feature value split over its
/// occurrences); out-of-vocabulary tokens get 0.
pub fn tfidf_token_values(doc: &TokenizedDoc, vocab: &Vocabulary) -> Result<Vec<f64>> {
    if doc.tokens.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let vector = vectorize(doc, vocab);
    let counts = occurrence_counts(doc, vocab);
    Ok(doc
        .tokens
        .iter()
        .map(|token| {
            vocab
                .index_of(token)
                .map_or(0.0, |i| vector.get(i) / counts[&i] as f64)
        })
        .collect())
}

/// Heatmap of classifier relevance for one document under one class.
/// Positive contributions render in one hue, negative in another.
pub fn highlight_lrp_html(
    doc: &TokenizedDoc,
    model: &LinearModel,
    class: &str,
    vocab: &Vocabulary,
) -> Result<String> {
    let relevance = lrp_token_relevances(doc, model, class, vocab)?;
    let heading = format!("{} — relevance for class `{class}` (lrp)", doc.id);
    Ok(render(&doc.id, &heading, &doc.tokens, &relevance))
}

/// Heatmap of raw tf-idf feature values; needs no trained model.
pub fn highlight_tfidf_html(doc: &TokenizedDoc, vocab: &Vocabulary) -> Result<String> {
    let relevance = tfidf_token_values(doc, vocab)?;
    let heading = format!("{} — tf-idf features", doc.id);
    Ok(render(&doc.id, &heading, &doc.tokens, &relevance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{score, train, TrainConfig};
    use crate::vectorize::{build_vocabulary, vectorize_corpus};

    fn doc(id: &str, tokens: &[&str]) -> TokenizedDoc {
        TokenizedDoc {
            id: id.into(),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
        }
    }

    fn setup() -> (Vocabulary, LinearModel) {
        let mut docs = Vec::new();
        let mut labels = Vec::new();
        for i in 0..5 {
            docs.push(doc(&format!("a{i}"), &["tumor", "lung", "tissue", "cells"]));
            labels.push("lung".to_string());
            docs.push(doc(
                &format!("b{i}"),
                &["glioma", "brain", "tissue", "scan"],
            ));
            labels.push("brain".to_string());
        }
        let vocab = build_vocabulary(&docs).unwrap();
        let vectors = vectorize_corpus(&docs, &vocab);
        let model = train(&vectors, &labels, &vocab, &TrainConfig::default()).unwrap();
        (vocab, model)
    }

    #[test]
    fn token_relevances_sum_to_classifier_score() {
        let (vocab, model) = setup();
        // a repeated token exercises the per-occurrence split
        let d = doc("q", &["tumor", "tumor", "lung", "unseen", "scan"]);
        for class in ["lung", "brain"] {
            let relevance = lrp_token_relevances(&d, &model, class, &vocab).unwrap();
            let total: f64 = relevance.iter().sum();
            let expected = score(&model, &vectorize(&d, &vocab), class).unwrap();
            assert!(
                (total - expected).abs() <= 1e-9 * expected.abs().max(1e-12),
                "sum {total} vs score {expected}"
            );
        }
    }

    #[test]
    fn all_zero_relevance_renders_fully_transparent() {
        // "x" occurs in every document, so its tf-idf value is 0 everywhere
        let docs = vec![doc("1", &["x", "y"]), doc("2", &["x", "z"])];
        let vocab = build_vocabulary(&docs).unwrap();
        let d = doc("q", &["x", "x"]);
        let html = highlight_tfidf_html(&d, &vocab).unwrap();
        assert_eq!(html.matches(",0.000)").count(), 2);
    }

    #[test]
    fn empty_document_is_error() {
        let (vocab, model) = setup();
        let d = doc("empty", &[]);
        match highlight_lrp_html(&d, &model, "lung", &vocab) {
            Err(Error::EmptyDocument) => {}
            other => panic!("expected EmptyDocument, got {other:?}"),
        }
        match highlight_tfidf_html(&d, &vocab) {
            Err(Error::EmptyDocument) => {}
            other => panic!("expected EmptyDocument, got {other:?}"),
        }
    }

    #[test]
    fn html_special_characters_are_escaped() {
        let docs = vec![doc("1", &["safe"]), doc("2", &["words"])];
        let vocab = build_vocabulary(&docs).unwrap();
        let d = doc("<img src=x>", &["<script>alert('x')</script>", "safe"]);
        let html = highlight_tfidf_html(&d, &vocab).unwrap();
        assert!(!html.contains("<script>"));
        assert!(html.contains("&lt;script&gt;"));
        assert!(!html.contains("<img"));
    }

    #[test]
    fn different_classes_highlight_differently() {
        let (vocab, model) = setup();
        let d = doc("q", &["tumor", "lung", "tissue", "glioma", "brain"]);
        let lung = highlight_lrp_html(&d, &model, "lung", &vocab).unwrap();
        let brain = highlight_lrp_html(&d, &model, "brain", &vocab).unwrap();
        assert_ne!(lung, brain);
        let tfidf = highlight_tfidf_html(&d, &vocab).unwrap();
        assert_ne!(tfidf, lung);
    }

    #[test]
    fn unknown_class_is_error() {
        let (vocab, model) = setup();
        let d = doc("q", &["tumor"]);
        match highlight_lrp_html(&d, &model, "kidney", &vocab) {
            Err(Error::UnknownClass(_)) => {}
            other => panic!("expected UnknownClass, got {other:?}"),
        }
    }

    #[test]
    fn negative_contributions_use_the_second_hue() {
        let (vocab, model) = setup();
        // brain-class view of a lung document: lung terms speak against it
        let d = doc("q", &["tumor", "lung", "cells"]);
        let html = highlight_lrp_html(&d, &model, "brain", &vocab).unwrap();
        assert!(html.contains("rgba(178,24,43"));
    }
}
