//! Tokenization and bigram detection.
//!
//! Texts are lowercased and split on every non-alphanumeric character.
//! Meaningful word pairs are then found by a data-driven score: the number
//! of times two words appear next to each other divided by the larger of
//! the two word counts. A score of 1 means the words never occur apart.
//! Pairs passing a threshold are joined into a single `a_b` token; chains
//! of passing pairs collapse into one token, so common three-word phrases
//! survive as trigrams.

use std::collections::BTreeMap;
use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::Corpus;

/// A document reduced to its token sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedDoc {
    pub id: String,
    pub tokens: Vec<String>,
}

/// Lowercases, replaces every non-alphanumeric character by a space and
/// splits on whitespace. Empty input yields an empty list.
pub fn tokenize(text: &str) -> Vec<String> {
    let lowered = text.to_lowercase();
    lowered
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Tokenizes every document of a corpus, in corpus order.
pub fn tokenize_corpus(corpus: &Corpus) -> Vec<TokenizedDoc> {
    corpus
        .documents
        .iter()
        .map(|d| TokenizedDoc {
            id: d.id.clone(),
            tokens: tokenize(&d.text),
        })
        .collect()
}

/// Count and score of one retained adjacent word pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BigramStat {
    pub pair_count: u64,
    /// `pair_count / max(count(a), count(b))`, always in (0, 1].
    pub score: f64,
}

/// All adjacent word pairs that occur at least twice, with their scores.
#[derive(Debug, Clone, Default)]
pub struct BigramTable {
    entries: BTreeMap<(String, String), BigramStat>,
}

impl BigramTable {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, a: &str, b: &str) -> Option<BigramStat> {
        self.entries.get(&(a.to_string(), b.to_string())).copied()
    }

    /// Rebuilds a table from `(a, b, pair_count, score)` rows, e.g. loaded
    /// from a saved run.
    pub fn from_rows(rows: &[(String, String, u64, f64)]) -> Self {
        let entries = rows
            .iter()
            .map(|(a, b, count, score)| {
                (
                    (a.clone(), b.clone()),
                    BigramStat {
                        pair_count: *count,
                        score: *score,
                    },
                )
            })
            .collect();
        BigramTable { entries }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(String, String), &BigramStat)> {
        self.entries.iter()
    }

    /// Fraction of retained pairs whose score reaches `threshold`.
    /// An empty table has a passing fraction of 0.
    pub fn pass_fraction(&self, threshold: f64) -> f64 {
        if self.entries.is_empty() {
            return 0.0;
        }
        let passing = self
            .entries
            .values()
            .filter(|s| s.score >= threshold)
            .count();
        passing as f64 / self.entries.len() as f64
    }

    /// Rows as `(token_a, token_b, pair_count, score)` sorted by descending
    /// score, then lexicographically. This is the `bigrams` TSV order.
    pub fn sorted_rows(&self) -> Vec<(&str, &str, u64, f64)> {
        let mut rows: Vec<_> = self
            .entries
            .iter()
            .map(|((a, b), s)| (a.as_str(), b.as_str(), s.pair_count, s.score))
            .collect();
        rows.sort_by(|x, y| {
            y.3.partial_cmp(&x.3)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| (x.0, x.1).cmp(&(y.0, y.1)))
        });
        rows
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("token_a\ttoken_b\tpair_count\tscore\n");
        for (a, b, count, score) in self.sorted_rows() {
            out.push_str(&format!("{a}\t{b}\t{count}\t{score:.6}\n"));
        }
        out
    }
}

/// Scores every adjacent token pair across the corpus.
///
/// Pair counts never cross document boundaries. Unigram counts are token
/// occurrences over the whole corpus, taken before any joining. Pairs seen
/// fewer than twice are discarded.
pub fn score_bigrams(docs: &[TokenizedDoc]) -> BigramTable {
    let mut unigrams: HashMap<&str, u64> = HashMap::new();
    let mut pairs: HashMap<(&str, &str), u64> = HashMap::new();
    for doc in docs {
        for token in &doc.tokens {
            *unigrams.entry(token).or_insert(0) += 1;
        }
        for pair in doc.tokens.windows(2) {
            *pairs.entry((&pair[0], &pair[1])).or_insert(0) += 1;
        }
    }

    let mut entries = BTreeMap::new();
    for ((a, b), pair_count) in pairs {
        if pair_count < 2 {
            continue;
        }
        let denom = unigrams[a].max(unigrams[b]);
        entries.insert(
            (a.to_string(), b.to_string()),
            BigramStat {
                pair_count,
                score: pair_count as f64 / denom as f64,
            },
        );
    }
    BigramTable { entries }
}

/// Joins passing bigrams in a single left-to-right pass.
///
/// Whenever the previous raw token and the next one score at or above
/// `threshold`, the next token is appended to the current output token with
/// a `_`. The comparison always uses the last raw component, so a chain of
/// passing pairs collapses into one token (`president_barack_obama`).
pub fn join_bigrams(doc: &TokenizedDoc, table: &BigramTable, threshold: f64) -> TokenizedDoc {
    let mut tokens: Vec<String> = Vec::with_capacity(doc.tokens.len());
    let mut iter = doc.tokens.iter();
    let Some(first) = iter.next() else {
        return TokenizedDoc {
            id: doc.id.clone(),
            tokens,
        };
    };
    let mut acc = first.clone();
    let mut last_raw = first.as_str();
    for next in iter {
        let passes = table
            .get(last_raw, next)
            .is_some_and(|s| s.score >= threshold);
        if passes {
            acc.push('_');
            acc.push_str(next);
        } else {
            tokens.push(std::mem::replace(&mut acc, next.clone()));
        }
        last_raw = next;
    }
    tokens.push(acc);
    TokenizedDoc {
        id: doc.id.clone(),
        tokens,
    }
}

/// Applies [`join_bigrams`] to every document.
pub fn join_corpus(
    docs: &[TokenizedDoc],
    table: &BigramTable,
    threshold: f64,
) -> Vec<TokenizedDoc> {
    docs.iter()
        .map(|d| join_bigrams(d, table, threshold))
        .collect()
}

/// Threshold grid reported by [`shuffle_calibration`].
pub const CALIBRATION_THRESHOLDS: &[f64] = &[
    0.01, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.40, 0.50, 0.75, 1.00,
];

/// Shuffles tokens within each document (never across documents) with a
/// seeded RNG, rescores bigrams on the shuffled corpus, and reports the
/// fraction of retained random bigrams passing each grid threshold.
///
/// Comparing these fractions with the original corpus's
/// [`BigramTable::pass_fraction`] shows how conservative a threshold is:
/// almost no shuffled pair survives 0.1 while real phrases do.
pub fn shuffle_calibration(docs: &[TokenizedDoc], seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shuffled: Vec<TokenizedDoc> = docs
        .iter()
        .map(|d| {
            let mut tokens = d.tokens.clone();
            tokens.shuffle(&mut rng);
            TokenizedDoc {
                id: d.id.clone(),
                tokens,
            }
        })
        .collect();
    let table = score_bigrams(&shuffled);
    CALIBRATION_THRESHOLDS
        .iter()
        .map(|&t| (t, table.pass_fraction(t)))
        .collect()
}
