//! Per-document relevance heatmaps.
//!
//! Trains a classifier on a small two-task corpus and renders the same
//! document three ways: raw tf-idf features, relevance under one class and
//! relevance under another. The per-token relevances of each heatmap sum
//! exactly to the classifier's affine score for that class.
//!
//! ```bash
//! cargo run --example highlight_document
//! ```

use std::fs;

use textscope::classify::{score, train, TrainConfig};
use textscope::preprocess::{tokenize, tokenize_corpus, TokenizedDoc};
use textscope::synth::{planted_corpus, PlantedConfig};
use textscope::vectorize::{build_vocabulary, vectorize, vectorize_corpus};
use textscope::viz::{highlight_lrp_html, highlight_tfidf_html, lrp_token_relevances};

fn main() -> textscope::Result<()> {
    let out = std::env::temp_dir().join("textscope-examples/highlight_document");
    fs::create_dir_all(&out).expect("create output dir");

    let planted = planted_corpus(&PlantedConfig {
        classes: 3,
        docs_per_class: 40,
        seed: 11,
        ..PlantedConfig::default()
    });
    let docs = tokenize_corpus(&planted.corpus);
    let labels: Vec<String> = planted
        .corpus
        .documents
        .iter()
        .map(|d| d.label.clone().unwrap())
        .collect();
    let vocab = build_vocabulary(&docs)?;
    let vectors = vectorize_corpus(&docs, &vocab);
    let model = train(
        &vectors,
        &labels,
        &vocab,
        &TrainConfig {
            seed: 11,
            ..TrainConfig::default()
        },
    )?;

    // a fresh paragraph mixing class0 and class1 keywords
    let text = format!(
        "the report on {} and {} also mentions {} twice: {} filler0 bg001",
        planted.keywords["class0"][0],
        planted.keywords["class0"][1],
        planted.keywords["class1"][0],
        planted.keywords["class1"][0],
    );
    let doc = TokenizedDoc {
        id: "demo-paragraph".into(),
        tokens: tokenize(&text),
    };
    println!("document: {text}\n");

    fs::write(out.join("tfidf.html"), highlight_tfidf_html(&doc, &vocab)?).expect("write html");
    for class in ["class0", "class1"] {
        let html = highlight_lrp_html(&doc, &model, class, &vocab)?;
        fs::write(out.join(format!("lrp_{class}.html")), html).expect("write html");

        let relevances = lrp_token_relevances(&doc, &model, class, &vocab)?;
        let total: f64 = relevances.iter().sum();
        let affine = score(&model, &vectorize(&doc, &vocab), class)?;
        println!("class {class}: token relevances sum to {total:.6}, affine score {affine:.6}");
        let mut ranked: Vec<(&String, f64)> = doc.tokens.iter().zip(relevances).collect();
        ranked.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap());
        for (token, r) in ranked.iter().take(3) {
            println!("  {token:<8} {r:+.4}");
        }
    }

    println!("\nheatmaps written to {}", out.display());
    Ok(())
}
