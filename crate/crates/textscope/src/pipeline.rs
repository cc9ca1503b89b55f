//! End-to-end workflows behind the command-line interface.
//!
//! Two main flows: `analyze` scores a labeled corpus per class with any
//! subset of the three scorers and renders a cloud per class and method;
//! `cluster` discovers groups in an unlabeled corpus first and scores the
//! clusters as classes. `highlight` and `compare` reuse the artifacts the
//! other commands leave in the output directory.
//!
//! Every run writes a `run_manifest.json` with the full configuration.
//! Outputs are pure functions of the manifest: re-running one reproduces
//! the same bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{evaluate, train, LinearModel, TrainConfig};
use crate::cluster::{dbscan, kernel_pca, ClusterLabel};
use crate::corpus::{Corpus, Document};
use crate::error::{Error, Result};
use crate::preprocess::{join_corpus, score_bigrams, tokenize_corpus, BigramTable, TokenizedDoc};
use crate::relevance::{distinctive_all, lrp, tfidf_sum, DistinctiveConfig, Method, ScoreTable};
use crate::vectorize::{build_vocabulary, vectorize_corpus, FeatureVector, Vocabulary};
use crate::viz::{
    highlight_lrp_html, highlight_tfidf_html, layout_cloud, render_svg, CanvasSize, WordCloudSpec,
};

pub const MANIFEST_FILE: &str = "run_manifest.json";
pub const VECTORIZER_FILE: &str = "vectorizer.json";
pub const MODEL_FILE: &str = "model.json";
pub const VOCAB_TSV_FILE: &str = "vocab.tsv";
pub const ASSIGNMENTS_FILE: &str = "assignments.json";

/// On-disk corpus formats understood by the loaders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusFormat {
    Dirs,
    Jsonl,
    Nyt,
}

/// Scorer selection for `analyze`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scorer {
    TfidfSum,
    Lrp,
    Distinctive,
}

impl Scorer {
    pub fn method(&self) -> Method {
        match self {
            Scorer::TfidfSum => Method::TfidfSum,
            Scorer::Lrp => Method::Lrp,
            Scorer::Distinctive => Method::Distinctive,
        }
    }
}

/// Heatmap flavor for `highlight`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HighlightMethod {
    Lrp,
    Tfidf,
}

/// Full configuration of a run. Defaults follow the reference workflow:
/// bigram threshold 0.1, minimum cosine similarity 0.55, at least 3
/// documents per cluster, 250 components, top 50 words per cloud.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: CorpusFormat,
    pub bigrams: bool,
    pub bigram_threshold: f64,
    pub scorers: Vec<Scorer>,
    pub top_k: usize,
    pub min_sim: f64,
    pub min_samples: usize,
    pub components: usize,
    pub split: f64,
    pub seed: u64,
    pub out: PathBuf,
    pub accuracy_floor: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: PathBuf::new(),
            format: CorpusFormat::Dirs,
            bigrams: false,
            bigram_threshold: 0.1,
            scorers: vec![Scorer::TfidfSum, Scorer::Lrp, Scorer::Distinctive],
            top_k: 50,
            min_sim: 0.55,
            min_samples: 3,
            components: 250,
            split: 0.2,
            seed: 0,
            out: PathBuf::new(),
            accuracy_floor: 0.6,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.bigram_threshold > 0.0 && self.bigram_threshold <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "--bigram-threshold must be in (0, 1], got {}",
                self.bigram_threshold
            )));
        }
        if !(self.split > 0.0 && self.split < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "--split must be in (0, 1), got {}",
                self.split
            )));
        }
        if !(self.min_sim > 0.0 && self.min_sim < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "--min-sim must be in (0, 1), got {}",
                self.min_sim
            )));
        }
        if self.top_k == 0 {
            return Err(Error::InvalidConfig("--top-k must be at least 1".into()));
        }
        if self.min_samples == 0 {
            return Err(Error::InvalidConfig(
                "--min-samples must be at least 1".into(),
            ));
        }
        if self.components == 0 {
            return Err(Error::InvalidConfig(
                "--components must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// The exact invocation, persisted so a run can be replayed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum CommandSpec {
    Analyze,
    Cluster,
    Highlight {
        doc_id: String,
        class: Option<String>,
        method: HighlightMethod,
    },
    Compare {
        group_a: String,
        group_b: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: CommandSpec,
    pub config: RunConfig,
}

/// What a run produced.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub outputs: Vec<PathBuf>,
    pub held_out_accuracy: Option<f64>,
    pub cluster_count: Option<usize>,
    pub noise_count: Option<usize>,
    pub warnings: Vec<String>,
}

/// Loads a corpus in the configured format.
pub fn load_corpus(config: &RunConfig) -> Result<Corpus> {
    match config.format {
        CorpusFormat::Dirs => crate::corpus::load_dir(&config.input),
        CorpusFormat::Jsonl => crate::corpus::load_jsonl(&config.input),
        CorpusFormat::Nyt => crate::corpus::load_nyt_archive(&config.input),
    }
}

/// Tokenized corpus with the bigram state used to produce it.
struct Prepared {
    docs: Vec<TokenizedDoc>,
    bigram_table: Option<BigramTable>,
    /// ids of documents dropped for being empty after tokenization
    dropped: Vec<String>,
}

/// Tokenizes, optionally joins bigrams, and drops empty documents (they
/// carry no terms; dropping them here keeps every downstream stage clean).
fn prepare(corpus: &Corpus, config: &RunConfig) -> Prepared {
    let mut docs = tokenize_corpus(corpus);
    let bigram_table = if config.bigrams {
        let table = score_bigrams(&docs);
        docs = join_corpus(&docs, &table, config.bigram_threshold);
        Some(table)
    } else {
        None
    };
    let dropped: Vec<String> = docs
        .iter()
        .filter(|d| d.tokens.is_empty())
        .map(|d| d.id.clone())
        .collect();
    if !dropped.is_empty() {
        log::warn!(
            "dropping {} empty document(s): {:?}",
            dropped.len(),
            dropped
        );
    }
    docs.retain(|d| !d.tokens.is_empty());
    Prepared {
        docs,
        bigram_table,
        dropped,
    }
}

/// Vectorizer state saved next to the outputs so `highlight` can preprocess
/// a document exactly like the run that trained the model.
#[derive(Serialize, Deserialize)]
struct VectorizerState {
    vocabulary: Vocabulary,
    bigram_threshold: Option<f64>,
    bigram_rows: Option<Vec<(String, String, u64, f64)>>,
}

impl VectorizerState {
    fn new(vocab: &Vocabulary, prepared: &Prepared, config: &RunConfig) -> Self {
        VectorizerState {
            vocabulary: vocab.clone(),
            bigram_threshold: prepared
                .bigram_table
                .as_ref()
                .map(|_| config.bigram_threshold),
            bigram_rows: prepared.bigram_table.as_ref().map(|t| {
                t.sorted_rows()
                    .into_iter()
                    .map(|(a, b, c, s)| (a.to_string(), b.to_string(), c, s))
                    .collect()
            }),
        }
    }
}

fn write_text(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn write_manifest(config: &RunConfig, command: CommandSpec) -> Result<PathBuf> {
    let manifest = RunManifest {
        command,
        config: config.clone(),
    };
    let path = config.out.join(MANIFEST_FILE);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_text(&path, &json)?;
    Ok(path)
}

/// Replays a saved manifest, reproducing the run's outputs byte for byte.
pub fn run_from_manifest(path: &Path) -> Result<RunReport> {
    let content = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let manifest: RunManifest = serde_json::from_str(&content).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    match manifest.command {
        CommandSpec::Analyze => run_analyze(&manifest.config),
        CommandSpec::Cluster => run_cluster(&manifest.config),
        CommandSpec::Highlight {
            doc_id,
            class,
            method,
        } => run_highlight(&manifest.config, &doc_id, class.as_deref(), method),
        CommandSpec::Compare { group_a, group_b } => {
            run_compare(&manifest.config, &group_a, &group_b)
        }
    }
}

fn safe_file_stem(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if cleaned.is_empty() {
        "unnamed".to_string()
    } else {
        cleaned
    }
}

/// Deterministic per-cloud seed so every class/method pair gets its own
/// layout while the whole run stays a function of the config seed.
fn cloud_seed(base: u64, class_idx: usize, method_idx: usize) -> u64 {
    base.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add((class_idx as u64) << 8)
        .wrapping_add(method_idx as u64)
}

fn write_table_outputs(
    table: &ScoreTable,
    stem: &str,
    config: &RunConfig,
    seed: u64,
    report: &mut RunReport,
) -> Result<()> {
    let json_path = config.out.join(format!("{stem}.json"));
    write_text(&json_path, &table.to_json_string())?;
    report.outputs.push(json_path);

    let spec = WordCloudSpec::from_score_table(table, config.top_k, CanvasSize::default(), seed);
    match layout_cloud(&spec) {
        Ok(layout) => {
            let svg_path = config.out.join(format!("{stem}.svg"));
            write_text(&svg_path, &render_svg(&layout))?;
            report.outputs.push(svg_path);
        }
        Err(Error::NothingToDraw) => {
            log::warn!("{stem}: all scores are zero, skipping the cloud");
            report
                .warnings
                .push(format!("{stem}: all scores zero, no cloud"));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Shuffled train/test split; the held-out fraction is `split`.
fn split_indices(n: usize, split: f64, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0a75_u64);
    order.shuffle(&mut rng);
    let n_test = ((n as f64 * split).round() as usize).clamp(1, n.saturating_sub(1).max(1));
    let test = order[..n_test].to_vec();
    let train = order[n_test..].to_vec();
    (train, test)
}

/// Labeled-corpus analysis: per class and per selected scorer, a score
/// table (JSON) and a word cloud (SVG). Training happens only when the
/// `lrp` scorer is requested; held-out accuracy is printed so low-quality
/// weights do not go unnoticed.
pub fn run_analyze(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    fs::create_dir_all(&config.out).map_err(|source| Error::Write {
        path: config.out.clone(),
        source,
    })?;

    let corpus = load_corpus(config)?;
    if !corpus.is_labeled() {
        return Err(Error::UnlabeledCorpus);
    }
    if corpus.label_set.len() < 2 {
        return Err(Error::NeedTwoClasses(corpus.label_set.len()));
    }

    let prepared = prepare(&corpus, config);
    let labels: Vec<String> = prepared
        .docs
        .iter()
        .map(|d| {
            corpus
                .get(&d.id)
                .and_then(|doc| doc.label.clone())
                .expect("prepared docs come from the corpus")
        })
        .collect();
    let vocab = build_vocabulary(&prepared.docs)?;
    let vectors = vectorize_corpus(&prepared.docs, &vocab);

    let mut report = RunReport::default();
    report.warnings.extend(
        prepared
            .dropped
            .iter()
            .map(|id| format!("dropped empty document {id}")),
    );

    // persist the preprocessing state for later `highlight` runs
    let state = VectorizerState::new(&vocab, &prepared, config);
    let state_path = config.out.join(VECTORIZER_FILE);
    write_text(
        &state_path,
        &serde_json::to_string_pretty(&state).expect("state serializes"),
    )?;
    report.outputs.push(state_path);
    let tsv_path = config.out.join(VOCAB_TSV_FILE);
    write_text(&tsv_path, &vocab.to_tsv())?;
    report.outputs.push(tsv_path);

    let needs_model = config.scorers.contains(&Scorer::Lrp);
    let model = if needs_model {
        let train_config = TrainConfig {
            seed: config.seed,
            ..TrainConfig::default()
        };

        // held-out accuracy from a split fit, kept honest by never showing
        // the evaluation documents to this model
        let (train_idx, test_idx) = split_indices(vectors.len(), config.split, config.seed);
        let train_vecs: Vec<FeatureVector> =
            train_idx.iter().map(|&i| vectors[i].clone()).collect();
        let train_labels: Vec<String> = train_idx.iter().map(|&i| labels[i].clone()).collect();
        let test_vecs: Vec<FeatureVector> = test_idx.iter().map(|&i| vectors[i].clone()).collect();
        let test_labels: Vec<String> = test_idx.iter().map(|&i| labels[i].clone()).collect();
        let mut distinct = train_labels.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::InvalidConfig(
                "the train split covers fewer than 2 classes; lower --split or add documents"
                    .into(),
            ));
        }
        let eval_model = train(&train_vecs, &train_labels, &vocab, &train_config)?;
        let accuracy = evaluate(&eval_model, &test_vecs, &test_labels)?;
        report.held_out_accuracy = Some(accuracy);
        log::info!("held-out accuracy: {accuracy:.3}");
        if accuracy < config.accuracy_floor {
            let warning = format!(
                "held-out accuracy {accuracy:.3} is below {:.2}; relevance scores from \
                 these weights are unreliable",
                config.accuracy_floor
            );
            log::warn!("{warning}");
            report.warnings.push(warning);
        }

        // the scoring model sees the full corpus: relevance aggregates over
        // every document of a class
        let full = train(&vectors, &labels, &vocab, &train_config)?;
        let model_path = config.out.join(MODEL_FILE);
        full.save(&model_path)?;
        report.outputs.push(model_path);
        Some(full)
    } else {
        None
    };

    let distinctive_tables = if config.scorers.contains(&Scorer::Distinctive) {
        Some(distinctive_all(
            &prepared.docs,
            &labels,
            &DistinctiveConfig::default(),
        )?)
    } else {
        None
    };

    let mut stems = BTreeMap::new();
    for (class_idx, class) in corpus.label_set.iter().enumerate() {
        for (method_idx, scorer) in config.scorers.iter().enumerate() {
            let table = match scorer {
                Scorer::TfidfSum => tfidf_sum(&vectors, &labels, class, &vocab)?,
                Scorer::Lrp => lrp(
                    &vectors,
                    &labels,
                    model.as_ref().expect("model trained when lrp requested"),
                    class,
                    &vocab,
                )?,
                Scorer::Distinctive => distinctive_tables
                    .as_ref()
                    .expect("tables computed when distinctive requested")
                    .iter()
                    .find(|t| &t.class_name == class)
                    .cloned()
                    .ok_or_else(|| Error::UnknownClass(class.clone()))?,
            };
            let stem = unique_stem(
                &mut stems,
                &format!("{}_{}", safe_file_stem(class), scorer.method().as_str()),
            );
            write_table_outputs(
                &table,
                &stem,
                config,
                cloud_seed(config.seed, class_idx, method_idx),
                &mut report,
            )?;
        }
    }

    report
        .outputs
        .push(write_manifest(config, CommandSpec::Analyze)?);
    Ok(report)
}

fn unique_stem(seen: &mut BTreeMap<String, usize>, stem: &str) -> String {
    let count = seen.entry(stem.to_string()).or_insert(0);
    *count += 1;
    if *count == 1 {
        stem.to_string()
    } else {
        format!("{stem}-{count}")
    }
}

/// Cluster-name width so labels sort consistently.
fn cluster_label(cluster: usize, cluster_count: usize) -> String {
    let width = cluster_count.saturating_sub(1).to_string().len();
    format!("cluster_{cluster:0width$}")
}

/// Unlabeled-corpus flow: kernel PCA, DBSCAN over cosine distances, then
/// distinctive words per discovered cluster. Noise documents are excluded
/// from scoring but reported. The assignment JSON is always written, even
/// when everything ends up as noise.
pub fn run_cluster(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    fs::create_dir_all(&config.out).map_err(|source| Error::Write {
        path: config.out.clone(),
        source,
    })?;

    let corpus = load_corpus(config)?;
    let prepared = prepare(&corpus, config);
    let vocab = build_vocabulary(&prepared.docs)?;
    let vectors = vectorize_corpus(&prepared.docs, &vocab);

    let reduced = kernel_pca(&vectors, config.components)?;
    let eps = 1.0 - config.min_sim;
    let assignment = dbscan(&reduced, eps, config.min_samples);

    let mut report = RunReport {
        cluster_count: Some(assignment.cluster_count),
        noise_count: Some(assignment.noise_count()),
        ..RunReport::default()
    };

    let ids: Vec<String> = prepared.docs.iter().map(|d| d.id.clone()).collect();
    let assignments_path = config.out.join(ASSIGNMENTS_FILE);
    write_text(&assignments_path, &assignment.to_json_string(&ids))?;
    report.outputs.push(assignments_path);

    log::info!(
        "found {} cluster(s), {} document(s) considered noise",
        assignment.cluster_count,
        assignment.noise_count()
    );

    let manifest_path = write_manifest(config, CommandSpec::Cluster)?;

    if assignment.cluster_count == 0 {
        report.outputs.push(manifest_path);
        return Err(Error::NoClusters);
    }

    // non-noise documents, with their cluster names as class labels
    let mut member_docs = Vec::new();
    let mut member_labels = Vec::new();
    for (doc, label) in prepared.docs.iter().zip(&assignment.labels) {
        if let ClusterLabel::Cluster(c) = label {
            member_docs.push(doc.clone());
            member_labels.push(cluster_label(*c, assignment.cluster_count));
        }
    }

    let mut stems = BTreeMap::new();
    if assignment.cluster_count == 1 {
        // a single cluster has nothing to contrast against; fall back to
        // summed tf-idf scores so the cluster still gets a cloud
        let member_vocab = build_vocabulary(&member_docs)?;
        let member_vectors = vectorize_corpus(&member_docs, &member_vocab);
        let class = cluster_label(0, 1);
        let table = tfidf_sum(&member_vectors, &member_labels, &class, &member_vocab)?;
        let stem = unique_stem(&mut stems, &format!("{class}_tfidf_sum"));
        write_table_outputs(
            &table,
            &stem,
            config,
            cloud_seed(config.seed, 0, 0),
            &mut report,
        )?;
        report.warnings.push(
            "single cluster found; distinctive scoring needs at least two groups, \
             used tfidf_sum instead"
                .to_string(),
        );
    } else {
        let tables = distinctive_all(&member_docs, &member_labels, &DistinctiveConfig::default())?;
        for (class_idx, table) in tables.iter().enumerate() {
            let stem = unique_stem(
                &mut stems,
                &format!("{}_distinctive", safe_file_stem(&table.class_name)),
            );
            write_table_outputs(
                table,
                &stem,
                config,
                cloud_seed(config.seed, class_idx, 2),
                &mut report,
            )?;
        }
    }

    report.outputs.push(manifest_path);
    Ok(report)
}

fn load_vectorizer_state(config: &RunConfig) -> Result<VectorizerState> {
    let path = config.out.join(VECTORIZER_FILE);
    let content = fs::read_to_string(&path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    serde_json::from_str(&content).map_err(|source| Error::Json { path, source })
}

/// Re-applies a saved run's preprocessing to one document.
fn preprocess_like(state: &VectorizerState, doc: &Document) -> TokenizedDoc {
    let tokenized = TokenizedDoc {
        id: doc.id.clone(),
        tokens: crate::preprocess::tokenize(&doc.text),
    };
    match (&state.bigram_rows, state.bigram_threshold) {
        (Some(rows), Some(threshold)) => {
            let table = BigramTable::from_rows(rows);
            crate::preprocess::join_bigrams(&tokenized, &table, threshold)
        }
        _ => tokenized,
    }
}

/// Renders one relevance heatmap from artifacts produced by `analyze`.
/// The `lrp` method needs the saved model; `tfidf` only the vocabulary.
pub fn run_highlight(
    config: &RunConfig,
    doc_id: &str,
    class: Option<&str>,
    method: HighlightMethod,
) -> Result<RunReport> {
    config.validate()?;
    let corpus = load_corpus(config)?;
    let doc = corpus
        .get(doc_id)
        .ok_or_else(|| Error::UnknownDocument(doc_id.to_string()))?;

    let state = load_vectorizer_state(config)?;
    let tokenized = preprocess_like(&state, doc);

    let (html, stem) = match method {
        HighlightMethod::Tfidf => (
            highlight_tfidf_html(&tokenized, &state.vocabulary)?,
            format!("highlight_{}_tfidf", safe_file_stem(doc_id)),
        ),
        HighlightMethod::Lrp => {
            let class = class.ok_or_else(|| {
                Error::InvalidConfig("--class is required for the lrp method".into())
            })?;
            let model = LinearModel::load(&config.out.join(MODEL_FILE))?;
            (
                highlight_lrp_html(&tokenized, &model, class, &state.vocabulary)?,
                format!(
                    "highlight_{}_lrp_{}",
                    safe_file_stem(doc_id),
                    safe_file_stem(class)
                ),
            )
        }
    };

    let path = config.out.join(format!("{stem}.html"));
    write_text(&path, &html)?;

    let mut report = RunReport::default();
    report.outputs.push(path);
    report.outputs.push(write_manifest(
        config,
        CommandSpec::Highlight {
            doc_id: doc_id.to_string(),
            class: class.map(str::to_string),
            method,
        },
    )?);
    Ok(report)
}

/// Selects documents for one side of a `compare` run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocFilter {
    /// `date:<start>..<end>` matches documents whose `pub_date` calendar
    /// day lies in the inclusive range.
    DateRange { start: String, end: String },
    /// `prefix:<p>` matches document ids starting with the prefix.
    IdPrefix(String),
}

impl DocFilter {
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(range) = s.strip_prefix("date:") {
            let (start, end) = range.split_once("..").ok_or_else(|| {
                Error::InvalidFilter(format!(
                    "`{s}`: expected date:<start>..<end>, e.g. date:2017-01-16..2017-01-22"
                ))
            })?;
            if start.is_empty() || end.is_empty() {
                return Err(Error::InvalidFilter(format!("`{s}`: empty bound")));
            }
            return Ok(DocFilter::DateRange {
                start: start.to_string(),
                end: end.to_string(),
            });
        }
        if let Some(prefix) = s.strip_prefix("prefix:") {
            if prefix.is_empty() {
                return Err(Error::InvalidFilter(format!("`{s}`: empty prefix")));
            }
            return Ok(DocFilter::IdPrefix(prefix.to_string()));
        }
        Err(Error::InvalidFilter(format!(
            "`{s}`: expected date:<start>..<end> or prefix:<id-prefix>"
        )))
    }

    pub fn matches(&self, doc: &Document) -> bool {
        match self {
            DocFilter::DateRange { start, end } => doc.pub_date.as_deref().is_some_and(|d| {
                let day = &d[..d.len().min(10)];
                day >= start.as_str() && day <= end.as_str()
            }),
            DocFilter::IdPrefix(prefix) => doc.id.starts_with(prefix),
        }
    }
}

/// Two-group comparison: the groups act as two classes, distinctive words
/// are scored in both directions and drawn in one two-sided cloud (group A
/// up-colored, group B down-colored).
pub fn run_compare(config: &RunConfig, group_a: &str, group_b: &str) -> Result<RunReport> {
    config.validate()?;
    fs::create_dir_all(&config.out).map_err(|source| Error::Write {
        path: config.out.clone(),
        source,
    })?;

    let filter_a = DocFilter::parse(group_a)?;
    let filter_b = DocFilter::parse(group_b)?;
    let corpus = load_corpus(config)?;

    let mut group_docs = Vec::new();
    let mut label_by_id: BTreeMap<String, &str> = BTreeMap::new();
    for doc in &corpus.documents {
        let in_a = filter_a.matches(doc);
        let in_b = filter_b.matches(doc);
        if in_a && in_b {
            return Err(Error::OverlappingGroups(doc.id.clone()));
        }
        if in_a || in_b {
            group_docs.push(doc.clone());
            label_by_id.insert(doc.id.clone(), if in_a { "group_a" } else { "group_b" });
        }
    }

    let sub_corpus = Corpus::from_documents(group_docs)?;
    let prepared = prepare(&sub_corpus, config);
    let labels: Vec<String> = prepared
        .docs
        .iter()
        .map(|d| label_by_id[&d.id].to_string())
        .collect();
    if !labels.iter().any(|l| l == "group_a") {
        return Err(Error::EmptyGroup(group_a.to_string()));
    }
    if !labels.iter().any(|l| l == "group_b") {
        return Err(Error::EmptyGroup(group_b.to_string()));
    }

    let tables = distinctive_all(&prepared.docs, &labels, &DistinctiveConfig::default())?;
    let table_a = tables
        .iter()
        .find(|t| t.class_name == "group_a")
        .expect("group_a scored");
    let table_b = tables
        .iter()
        .find(|t| t.class_name == "group_b")
        .expect("group_b scored");

    let mut report = RunReport::default();
    for table in [table_a, table_b] {
        let path = config
            .out
            .join(format!("{}_distinctive.json", table.class_name));
        write_text(&path, &table.to_json_string())?;
        report.outputs.push(path);
    }

    let spec = WordCloudSpec::two_sided(
        "group_a-vs-group_b",
        table_a,
        table_b,
        config.top_k,
        CanvasSize::default(),
        config.seed,
    );
    match layout_cloud(&spec) {
        Ok(layout) => {
            let path = config.out.join("compare.svg");
            write_text(&path, &render_svg(&layout))?;
            report.outputs.push(path);
        }
        Err(Error::NothingToDraw) => {
            log::warn!("compare: no distinctive words in either direction, skipping the cloud");
            report
                .warnings
                .push("no distinctive words; cloud skipped".into());
        }
        Err(e) => return Err(e),
    }

    report.outputs.push(write_manifest(
        config,
        CommandSpec::Compare {
            group_a: group_a.to_string(),
            group_b: group_b.to_string(),
        },
    )?);
    Ok(report)
}

/// Scores all bigrams of the configured corpus; the CLI prints the TSV.
pub fn bigram_table(config: &RunConfig) -> Result<BigramTable> {
    let corpus = load_corpus(config)?;
    let docs = tokenize_corpus(&corpus);
    Ok(score_bigrams(&docs))
}
