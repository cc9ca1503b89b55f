//! Topic discovery in an unlabeled corpus.
//!
//! Reduces tf-idf vectors with linear kernel PCA, clusters them with
//! DBSCAN over cosine distances (minimum similarity 0.55, at least three
//! documents per cluster) and prints the distinctive words of each
//! discovered cluster.
//!
//! ```bash
//! cargo run --example cluster_topics
//! ```

use textscope::cluster::{dbscan, kernel_pca, ClusterLabel};
use textscope::preprocess::tokenize_corpus;
use textscope::relevance::{distinctive_all, top_k, DistinctiveConfig};
use textscope::synth::two_topic_corpus;
use textscope::vectorize::{build_vocabulary, vectorize_corpus};

fn main() -> textscope::Result<()> {
    let topics = two_topic_corpus(15, 21);
    let corpus = &topics.corpus;
    println!("corpus: {} unlabeled documents\n", corpus.len());

    let docs = tokenize_corpus(corpus);
    let vocab = build_vocabulary(&docs)?;
    let vectors = vectorize_corpus(&docs, &vocab);

    let reduced = kernel_pca(&vectors, 250)?;
    println!("kernel PCA kept {} components", reduced.component_count);

    let min_sim = 0.55;
    let assignment = dbscan(&reduced, 1.0 - min_sim, 3);
    println!(
        "DBSCAN: {} cluster(s), {} document(s) considered noise\n",
        assignment.cluster_count,
        assignment.noise_count()
    );

    // treat the discovered clusters as classes and score their words
    let mut member_docs = Vec::new();
    let mut member_labels = Vec::new();
    for (doc, label) in docs.iter().zip(&assignment.labels) {
        if let ClusterLabel::Cluster(c) = label {
            member_docs.push(doc.clone());
            member_labels.push(format!("cluster_{c}"));
        }
    }
    let tables = distinctive_all(&member_docs, &member_labels, &DistinctiveConfig::default())?;
    for table in &tables {
        let top: Vec<String> = top_k(&table.clone(), 8)
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        println!("{}: {}", table.class_name, top.join(", "));
    }

    println!(
        "\n(planted topics were {:?} and {:?})",
        &topics.topic_a_words[..3],
        &topics.topic_b_words[..3]
    );
    Ok(())
}
