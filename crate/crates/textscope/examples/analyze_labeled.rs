//! Labeled-corpus analysis with all three scorers.
//!
//! Builds a synthetic 5-class corpus with planted keywords, scores every
//! class with summed tf-idf, classifier relevance (LRP) and distinctive
//! words, prints the top terms side by side and writes one word cloud per
//! class and scorer.
//!
//! ```bash
//! cargo run --example analyze_labeled
//! ```

use std::fs;

use textscope::classify::{evaluate, train, TrainConfig};
use textscope::preprocess::tokenize_corpus;
use textscope::relevance::{
    distinctive_all, lrp, occurrence_rates, tfidf_sum, top_k, DistinctiveConfig,
};
use textscope::synth::{planted_corpus, PlantedConfig};
use textscope::vectorize::{build_vocabulary, vectorize_corpus};
use textscope::viz::{layout_cloud, render_svg, CanvasSize, WordCloudSpec};

fn main() -> textscope::Result<()> {
    let out = std::env::temp_dir().join("textscope-examples/analyze_labeled");
    fs::create_dir_all(&out).expect("create output dir");

    let planted = planted_corpus(&PlantedConfig {
        classes: 5,
        docs_per_class: 60,
        seed: 7,
        ..PlantedConfig::default()
    });
    let corpus = &planted.corpus;
    println!(
        "corpus: {} documents, {} classes, planted keywords like {:?}",
        corpus.len(),
        corpus.label_set.len(),
        &planted.keywords["class0"][..3]
    );

    let docs = tokenize_corpus(corpus);
    let labels: Vec<String> = corpus
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
            seed: 7,
            ..TrainConfig::default()
        },
    )?;
    println!(
        "training accuracy: {:.3}\n",
        evaluate(&model, &vectors, &labels)?
    );

    let distinctive = distinctive_all(&docs, &labels, &DistinctiveConfig::default())?;
    for class in &corpus.label_set {
        let tables = [
            tfidf_sum(&vectors, &labels, class, &vocab)?,
            lrp(&vectors, &labels, &model, class, &vocab)?,
            distinctive
                .iter()
                .find(|t| &t.class_name == class)
                .unwrap()
                .clone(),
        ];
        println!("== {class} ==");
        for table in &tables {
            let top: Vec<String> = top_k(table, 6).into_iter().map(|(t, _)| t).collect();
            println!("  {:<11} {}", table.method.as_str(), top.join(", "));
            let spec = WordCloudSpec::from_score_table(table, 50, CanvasSize::default(), 7);
            let svg = render_svg(&layout_cloud(&spec)?);
            fs::write(
                out.join(format!("{class}_{}.svg", table.method.as_str())),
                svg,
            )
            .expect("write svg");
        }
    }

    // how often a filler word shows up per class: frequent everywhere,
    // which is exactly why it never counts as distinctive
    let rates = occurrence_rates(&docs, &labels, &[planted.fillers[0].clone()]);
    println!(
        "\nfraction of documents mentioning `{}`:",
        planted.fillers[0]
    );
    for (class, rate) in rates {
        println!("  {class}: {rate:.2}");
    }

    println!("\nword clouds written to {}", out.display());
    Ok(())
}
