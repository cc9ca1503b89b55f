//! Bigram detection, joining and threshold calibration.
//!
//! Scores adjacent word pairs (pair count over the larger unigram count),
//! joins passing pairs into single tokens, and shows why 0.1 is a safe
//! threshold: bigrams from shuffled documents almost never reach it.
//!
//! ```bash
//! cargo run --example detect_bigrams
//! ```

use textscope::preprocess::{
    join_bigrams, score_bigrams, shuffle_calibration, tokenize, tokenize_corpus, TokenizedDoc,
};
use textscope::synth::collocation_corpus;

fn main() {
    let planted = collocation_corpus(200, 8, 3);
    let docs = tokenize_corpus(&planted.corpus);
    let table = score_bigrams(&docs);

    println!("top bigrams (token_a token_b pair_count score):");
    for (a, b, count, score) in table.sorted_rows().into_iter().take(10) {
        println!("  {a:<10} {b:<10} {count:>3}  {score:.3}");
    }

    // joining collapses chains: both pairs of a three-word phrase pass, so
    // the phrase becomes a single token, while `spoke` stays separate
    let chain_docs = vec![
        TokenizedDoc {
            id: "c1".into(),
            tokens: tokenize("president barack obama spoke first"),
        },
        TokenizedDoc {
            id: "c2".into(),
            tokens: tokenize("president barack obama listened"),
        },
        TokenizedDoc {
            id: "c3".into(),
            tokens: tokenize("nobody spoke and nobody else spoke"),
        },
    ];
    let chain_table = score_bigrams(&chain_docs);
    let joined = join_bigrams(&chain_docs[0], &chain_table, 0.1);
    println!(
        "\njoining a passing chain: {:?} -> {:?}",
        chain_docs[0].tokens, joined.tokens
    );

    let (a, b) = &planted.pairs[0];
    let joined_corpus = join_bigrams(&docs[0], &table, 0.1);
    println!(
        "planted pair `{a} {b}` scores {:.1} and becomes `{a}_{b}` wherever it occurs \
         (doc 0 now has {} tokens)",
        table.get(a, b).unwrap().score,
        joined_corpus.tokens.len()
    );

    println!("\nthreshold calibration (fraction of shuffled-corpus bigrams passing):");
    println!("  threshold   shuffled   original");
    for (threshold, shuffled) in shuffle_calibration(&docs, 99) {
        println!(
            "  {threshold:>8.2}   {:>7.3}%   {:>7.3}%",
            shuffled * 100.0,
            table.pass_fraction(threshold) * 100.0
        );
    }
    println!("\nat 0.1 almost no random bigram survives, while real phrases do");
}
