//! Seeded synthetic corpora.
//!
//! These generators back the runnable examples and the end-to-end checks:
//! a multi-class corpus with planted exclusive keywords over a shared
//! background vocabulary, a two-topic corpus with disjoint vocabularies,
//! and a collocation corpus with planted always-adjacent word pairs.
//! Identical seeds produce identical corpora.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, Document};

/// Shape of a [`planted_corpus`].
#[derive(Debug, Clone)]
pub struct PlantedConfig {
    pub classes: usize,
    pub docs_per_class: usize,
    pub background_vocab: usize,
    pub keywords_per_class: usize,
    /// Probability that a class keyword appears in a class document.
    pub keyword_prevalence: f64,
    pub background_tokens_per_doc: usize,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            classes: 5,
            docs_per_class: 100,
            background_vocab: 500,
            keywords_per_class: 10,
            keyword_prevalence: 0.6,
            background_tokens_per_doc: 30,
            seed: 0,
        }
    }
}

/// A generated corpus plus the ground truth needed to check results.
#[derive(Debug, Clone)]
pub struct PlantedCorpus {
    pub corpus: Corpus,
    /// class name -> its exclusive keywords
    pub keywords: BTreeMap<String, Vec<String>>,
    /// high-frequency words present in most documents of every class
    pub fillers: Vec<String>,
}

/// Labeled corpus with exclusive per-class keywords on top of a shared
/// Zipf-distributed background vocabulary. A few filler words occur many
/// times in most documents of every class: frequent enough to dominate
/// summed tf-idf scores, but useless for telling classes apart.
pub fn planted_corpus(config: &PlantedConfig) -> PlantedCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let background: Vec<String> = (0..config.background_vocab)
        .map(|i| format!("bg{i:03}"))
        .collect();
    // Zipf-ish cumulative weights over the background vocabulary
    let weights: Vec<f64> = (0..background.len())
        .map(|i| 1.0 / (i + 1) as f64)
        .collect();
    let cumulative: Vec<f64> = weights
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w;
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().unwrap();

    let fillers: Vec<String> = (0..3).map(|i| format!("filler{i}")).collect();

    let mut keywords = BTreeMap::new();
    let mut documents = Vec::new();
    for c in 0..config.classes {
        let class = format!("class{c}");
        let class_keywords: Vec<String> = (0..config.keywords_per_class)
            .map(|j| format!("kw{c}x{j:02}"))
            .collect();
        for d in 0..config.docs_per_class {
            let mut tokens: Vec<String> = Vec::new();
            for filler in &fillers {
                if rng.random_range(0.0..1.0) < 0.85 {
                    let reps = rng.random_range(8..=12);
                    tokens.extend(std::iter::repeat_n(filler.clone(), reps));
                }
            }
            for _ in 0..config.background_tokens_per_doc {
                let r = rng.random_range(0.0..total);
                let idx = cumulative.partition_point(|&c| c < r);
                tokens.push(background[idx.min(background.len() - 1)].clone());
            }
            for kw in &class_keywords {
                if rng.random_range(0.0..1.0) < config.keyword_prevalence {
                    tokens.push(kw.clone());
                }
            }
            tokens.shuffle(&mut rng);
            documents.push(Document {
                id: format!("{class}/{d:03}"),
                text: tokens.join(" "),
                label: Some(class.clone()),
                pub_date: None,
            });
        }
        keywords.insert(class, class_keywords);
    }

    let corpus = Corpus::from_documents(documents).expect("generated ids are unique");
    PlantedCorpus {
        corpus,
        keywords,
        fillers,
    }
}

/// Ground truth of a [`two_topic_corpus`].
#[derive(Debug, Clone)]
pub struct TwoTopicCorpus {
    pub corpus: Corpus,
    pub topic_a_words: Vec<String>,
    pub topic_b_words: Vec<String>,
}

/// Unlabeled corpus of two topics with fully disjoint vocabularies, for
/// clustering demos: documents of the same topic overlap heavily, documents
/// of different topics share no words at all.
pub fn two_topic_corpus(docs_per_topic: usize, seed: u64) -> TwoTopicCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let topic_a_words: Vec<String> = (0..10).map(|i| format!("ocean{i}")).collect();
    let topic_b_words: Vec<String> = (0..10).map(|i| format!("desert{i}")).collect();

    let mut documents = Vec::new();
    for (t, words) in [(0, &topic_a_words), (1, &topic_b_words)] {
        for d in 0..docs_per_topic {
            let tokens: Vec<String> = (0..30)
                .map(|_| words[rng.random_range(0..words.len())].clone())
                .collect();
            documents.push(Document {
                id: format!("t{t}-{d:03}"),
                text: tokens.join(" "),
                label: None,
                pub_date: None,
            });
        }
    }
    let corpus = Corpus::from_documents(documents).expect("generated ids are unique");
    TwoTopicCorpus {
        corpus,
        topic_a_words,
        topic_b_words,
    }
}

/// Ground truth of a [`collocation_corpus`].
#[derive(Debug, Clone)]
pub struct CollocationCorpus {
    pub corpus: Corpus,
    /// planted always-adjacent pairs; neither word occurs outside its pair
    pub pairs: Vec<(String, String)>,
}

/// Filler documents drawn from a Zipf vocabulary with `n_pairs` planted
/// word pairs spliced in. Each pair occurs three times, always adjacent,
/// and its words appear nowhere else, so each scores exactly 1.
pub fn collocation_corpus(n_docs: usize, n_pairs: usize, seed: u64) -> CollocationCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vocab: Vec<String> = (0..800).map(|i| format!("w{i:03}")).collect();
    let weights: Vec<f64> = (0..vocab.len()).map(|i| 1.0 / (i + 1) as f64).collect();
    let cumulative: Vec<f64> = weights
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w;
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().unwrap();

    // segments keep planted pairs atomic so a later insertion can never
    // split an earlier pair
    let mut docs: Vec<Vec<Vec<String>>> = (0..n_docs)
        .map(|_| {
            (0..120)
                .map(|_| {
                    let r = rng.random_range(0.0..total);
                    let idx = cumulative.partition_point(|&c| c < r);
                    vec![vocab[idx.min(vocab.len() - 1)].clone()]
                })
                .collect()
        })
        .collect();

    let mut pairs = Vec::new();
    for p in 0..n_pairs {
        let a = format!("pair{p:02}a");
        let b = format!("pair{p:02}b");
        for _ in 0..3 {
            let doc = rng.random_range(0..docs.len());
            let pos = rng.random_range(0..=docs[doc].len());
            docs[doc].insert(pos, vec![a.clone(), b.clone()]);
        }
        pairs.push((a, b));
    }

    let documents = docs
        .into_iter()
        .enumerate()
        .map(|(i, segments)| Document {
            id: format!("doc{i:04}"),
            text: segments.concat().join(" "),
            label: None,
            pub_date: None,
        })
        .collect();
    let corpus = Corpus::from_documents(documents).expect("generated ids are unique");
    CollocationCorpus { corpus, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_corpus_is_deterministic() {
        let config = PlantedConfig {
            docs_per_class: 5,
            ..PlantedConfig::default()
        };
        let a = planted_corpus(&config);
        let b = planted_corpus(&config);
        assert_eq!(a.corpus, b.corpus);
    }

    #[test]
    fn planted_corpus_has_expected_shape() {
        let config = PlantedConfig {
            classes: 3,
            docs_per_class: 4,
            ..PlantedConfig::default()
        };
        let got = planted_corpus(&config);
        assert_eq!(got.corpus.len(), 12);
        assert_eq!(got.corpus.label_set.len(), 3);
        assert_eq!(got.keywords.len(), 3);
        // keywords never leak into other classes
        for doc in &got.corpus.documents {
            let label = doc.label.as_deref().unwrap();
            for (class, kws) in &got.keywords {
                if class != label {
                    for kw in kws {
                        assert!(!doc.text.contains(kw), "{kw} leaked into {}", doc.id);
                    }
                }
            }
        }
    }

    #[test]
    fn two_topic_vocabularies_are_disjoint() {
        let got = two_topic_corpus(8, 3);
        for doc in &got.corpus.documents {
            let has_a = got.topic_a_words.iter().any(|w| doc.text.contains(w));
            let has_b = got.topic_b_words.iter().any(|w| doc.text.contains(w));
            assert!(has_a != has_b, "doc {} mixes topics", doc.id);
        }
    }

    #[test]
    fn collocation_pairs_are_exclusive_and_adjacent() {
        let got = collocation_corpus(30, 5, 11);
        for (a, b) in &got.pairs {
            let mut adjacent = 0;
            let mut count_a = 0;
            let mut count_b = 0;
            for doc in &got.corpus.documents {
                let tokens: Vec<&str> = doc.text.split(' ').collect();
                count_a += tokens.iter().filter(|t| *t == a).count();
                count_b += tokens.iter().filter(|t| *t == b).count();
                for w in tokens.windows(2) {
                    if w[0] == a {
                        assert_eq!(w[1], b, "{a} not followed by {b}");
                        adjacent += 1;
                    }
                }
            }
            assert_eq!(adjacent, 3, "pair {a} {b} should occur exactly 3 times");
            assert_eq!(count_a, 3);
            assert_eq!(count_b, 3);
        }
    }
}
