//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with:
//!
//! ```bash
//! cargo test -p textscope --test acceptance -- --nocapture
//! ```
//!
//! Criterion 9 (paper-scale accuracy) needs an external corpus and is
//! ignored by default; see `criterion_9_paper_scale_accuracy`.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use textscope::classify::{evaluate, score, train, TrainConfig};
use textscope::cluster::{cosine_distance, dbscan, kernel_pca, ClusterLabel, ReducedMatrix};
use textscope::corpus::Corpus;
use textscope::pipeline::{run_analyze, run_cluster, CorpusFormat, RunConfig};
use textscope::preprocess::{join_corpus, score_bigrams, shuffle_calibration, tokenize_corpus};
use textscope::relevance::{
    distinctive_all, distinctive_score, lrp_document, tfidf_sum, top_k, DistinctiveConfig,
};
use textscope::synth::{collocation_corpus, planted_corpus, two_topic_corpus, PlantedConfig};
use textscope::vectorize::{build_vocabulary, vectorize_corpus, FeatureVector};
use textscope::viz::text_extent;

fn corpus_to_jsonl(corpus: &Corpus, path: &Path) {
    let mut lines = String::new();
    for doc in &corpus.documents {
        let mut obj = serde_json::json!({ "id": doc.id, "text": doc.text });
        if let Some(label) = &doc.label {
            obj["label"] = serde_json::json!(label);
        }
        lines.push_str(&serde_json::to_string(&obj).unwrap());
        lines.push('\n');
    }
    fs::write(path, lines).unwrap();
}

/// Criterion 1: on 200 random synthetic documents and a 4-class model, the
/// per-document sum of term relevances equals the affine class score within
/// 1e-9 relative error, for every class. Runtime < 5 s.
#[test]
fn criterion_1_lrp_conservation() {
    let started = Instant::now();

    let planted = planted_corpus(&PlantedConfig {
        classes: 4,
        docs_per_class: 50,
        seed: 1001,
        ..PlantedConfig::default()
    });
    let docs = tokenize_corpus(&planted.corpus);
    let labels: Vec<String> = planted
        .corpus
        .documents
        .iter()
        .map(|d| d.label.clone().unwrap())
        .collect();
    let vocab = build_vocabulary(&docs).unwrap();
    let vectors = vectorize_corpus(&docs, &vocab);
    let model = train(
        &vectors,
        &labels,
        &vocab,
        &TrainConfig {
            seed: 1001,
            ..TrainConfig::default()
        },
    )
    .unwrap();

    assert_eq!(vectors.len(), 200);
    let mut checks = 0usize;
    for vector in &vectors {
        for class in &model.classes.clone() {
            let relevances = lrp_document(vector, &model, class).unwrap();
            let total: f64 = relevances.iter().sum();
            let expected = score(&model, vector, class).unwrap();
            let err = (total - expected).abs();
            assert!(
                err <= 1e-9 * expected.abs(),
                "doc {} class {class}: sum {total} vs score {expected} (err {err:.3e})",
                vector.doc_id
            );
            checks += 1;
        }
    }
    assert_eq!(checks, 800);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("criterion 1 PASS: LRP conservation within 1e-9 relative on 200 docs x 4 classes ({elapsed:?})");
}

/// Criterion 2: distinctive-score calibration points hold exactly and the
/// 41x41 score grid is monotone with zero violations.
#[test]
fn criterion_2_distinctive_calibration() {
    let eps = 1e-8;

    // a TPR three times the FPR already earns the full quotient score
    let low = distinctive_score(0.3, 0.05, eps);
    let high = distinctive_score(1.0, 0.05, eps);
    assert_eq!(low.quot, 1.0);
    assert_eq!(high.quot, 1.0);
    assert_eq!(low.quot, high.quot);

    assert_eq!(distinctive_score(1.0, 0.0, eps).dist, 1.0);
    for i in 1..=9 {
        let t = i as f64 / 10.0;
        assert_eq!(distinctive_score(t, t, eps).dist, 0.0, "r_dist({t},{t})");
    }

    let grid: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
    let mut violations = 0usize;
    for (ti, &tpr) in grid.iter().enumerate() {
        for (fi, &fpr) in grid.iter().enumerate() {
            let here = distinctive_score(tpr, fpr, eps).dist;
            assert!((0.0..=1.0).contains(&here));
            if ti + 1 < grid.len() && distinctive_score(grid[ti + 1], fpr, eps).dist < here {
                violations += 1;
            }
            if fi + 1 < grid.len() && distinctive_score(tpr, grid[fi + 1], eps).dist > here {
                violations += 1;
            }
        }
    }
    assert_eq!(
        violations, 0,
        "{violations} monotonicity violations on the grid"
    );
    println!("criterion 2 PASS: calibration points exact, 41x41 grid monotone with 0 violations");
}

/// Criterion 3: distinctive recovers >= 9/10 planted keywords per class on
/// the 5-class corpus, while summed tf-idf lets a frequent background word
/// into some top-10. Runtime < 30 s.
#[test]
fn criterion_3_planted_keyword_recovery() {
    let started = Instant::now();

    let planted = planted_corpus(&PlantedConfig::default());
    assert_eq!(planted.corpus.len(), 500);
    let docs = tokenize_corpus(&planted.corpus);
    let labels: Vec<String> = planted
        .corpus
        .documents
        .iter()
        .map(|d| d.label.clone().unwrap())
        .collect();
    let vocab = build_vocabulary(&docs).unwrap();
    let vectors = vectorize_corpus(&docs, &vocab);

    let tables = distinctive_all(&docs, &labels, &DistinctiveConfig::default()).unwrap();
    assert_eq!(tables.len(), 5);
    for table in &tables {
        let top: Vec<String> = top_k(table, 10).into_iter().map(|(t, _)| t).collect();
        let keywords = &planted.keywords[&table.class_name];
        let recovered = top.iter().filter(|t| keywords.contains(t)).count();
        assert!(
            recovered >= 9,
            "{}: only {recovered}/10 keywords in distinctive top-10: {top:?}",
            table.class_name
        );
    }

    let mut classes_with_background_word = 0usize;
    for class in &planted.corpus.label_set {
        let table = tfidf_sum(&vectors, &labels, class, &vocab).unwrap();
        let top: Vec<String> = top_k(&table, 10).into_iter().map(|(t, _)| t).collect();
        let keywords = &planted.keywords[class];
        if top.iter().any(|t| !keywords.contains(t)) {
            classes_with_background_word += 1;
        }
    }
    assert!(
        classes_with_background_word >= 1,
        "no background word reached any tfidf_sum top-10"
    );

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 3 PASS: distinctive >= 9/10 keywords per class; background word in \
         tfidf_sum top-10 for {classes_with_background_word}/5 classes ({elapsed:?})"
    );
}

/// Criterion 4: all 20 planted always-co-occurring pairs score exactly 1.0
/// and join at threshold 0.1; on the within-document-shuffled corpus fewer
/// than 1% of scored bigrams pass 0.1.
#[test]
fn criterion_4_bigram_detection() {
    let planted = collocation_corpus(300, 20, 0);
    let docs = tokenize_corpus(&planted.corpus);
    let table = score_bigrams(&docs);

    for (a, b) in &planted.pairs {
        let stat = table
            .get(a, b)
            .unwrap_or_else(|| panic!("pair {a} {b} missing"));
        assert_eq!(stat.score, 1.0, "pair {a} {b} scored {}", stat.score);
    }

    let joined = join_corpus(&docs, &table, 0.1);
    for (a, b) in &planted.pairs {
        let phrase = format!("{a}_{b}");
        assert!(
            joined.iter().any(|d| d.tokens.contains(&phrase)),
            "pair {a} {b} was not joined"
        );
    }

    let report = shuffle_calibration(&docs, 777);
    let (_, shuffled_pass) = report
        .iter()
        .find(|(t, _)| (*t - 0.1).abs() < 1e-12)
        .copied()
        .unwrap();
    assert!(
        shuffled_pass < 0.01,
        "{:.3}% of shuffled bigrams passed 0.1",
        shuffled_pass * 100.0
    );
    let original_pass = table.pass_fraction(0.1);
    assert!(
        shuffled_pass < original_pass,
        "shuffled pass rate {shuffled_pass} not below original {original_pass}"
    );

    println!(
        "criterion 4 PASS: 20/20 pairs score 1.0 and join; {:.3}% of shuffled bigrams pass \
         0.1 (original corpus: {:.3}%)",
        shuffled_pass * 100.0,
        original_pass * 100.0
    );
}

// ----- brute-force DBSCAN reference (independent of the implementation) ---

/// Naive density reachability: neighbor counts decide cores, core
/// components are found by O(N^2)-per-round label propagation to a
/// fixpoint, and border points pick the earliest-created cluster among
/// the cores that reach them (creation order = ascending first core index,
/// which is the pinned document-order convention). Clusters are then
/// renumbered by descending size, ties by creation order.
fn reference_dbscan(rows: &[Vec<f64>], eps: f64, min_samples: usize) -> Vec<ClusterLabel> {
    let n = rows.len();
    let within: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| cosine_distance(&rows[i], &rows[j]) <= eps)
                .collect()
        })
        .collect();
    let core: Vec<bool> = within.iter().map(|nb| nb.len() >= min_samples).collect();

    // propagate the minimum core index through core-core adjacency
    let mut rep: Vec<Option<usize>> = (0..n).map(|i| core[i].then_some(i)).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            if !core[i] {
                continue;
            }
            for &j in &within[i] {
                if !core[j] {
                    continue;
                }
                let m = rep[i].unwrap().min(rep[j].unwrap());
                if rep[i] != Some(m) {
                    rep[i] = Some(m);
                    changed = true;
                }
                if rep[j] != Some(m) {
                    rep[j] = Some(m);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // cluster creation order: ascending minimum core index
    let reps: BTreeSet<usize> = rep.iter().flatten().copied().collect();
    let creation_id: BTreeMap<usize, usize> =
        reps.iter().enumerate().map(|(k, &r)| (r, k)).collect();

    let mut label: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        if core[i] {
            label[i] = Some(creation_id[&rep[i].unwrap()]);
        }
    }
    for i in 0..n {
        if core[i] {
            continue;
        }
        label[i] = within[i]
            .iter()
            .filter(|&&j| core[j])
            .map(|&j| creation_id[&rep[j].unwrap()])
            .min();
    }

    // renumber by descending size, ties by creation order
    let cluster_count = reps.len();
    let mut sizes = vec![0usize; cluster_count];
    for l in label.iter().flatten() {
        sizes[*l] += 1;
    }
    let mut order: Vec<usize> = (0..cluster_count).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(sizes[c]), c));
    let mut remap = vec![0usize; cluster_count];
    for (new_id, &old) in order.iter().enumerate() {
        remap[old] = new_id;
    }
    label
        .into_iter()
        .map(|l| match l {
            Some(c) => ClusterLabel::Cluster(remap[c]),
            None => ClusterLabel::Noise,
        })
        .collect()
}

/// Criterion 5: cluster assignments match the brute-force reference exactly
/// on 100 random instances with N <= 50 and random eps / min_samples.
#[test]
fn criterion_5_dbscan_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5001);
    for case in 0..100 {
        let n = rng.random_range(2..=50);
        let dims = rng.random_range(2..=4);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dims).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let eps = rng.random_range(0.05..1.0);
        let min_samples = rng.random_range(1..=6);

        let matrix = ReducedMatrix {
            component_count: dims,
            rows: rows.clone(),
        };
        let got = dbscan(&matrix, eps, min_samples);
        let expected = reference_dbscan(&rows, eps, min_samples);
        assert_eq!(
            got.labels, expected,
            "case {case}: n={n} eps={eps:.3} min_samples={min_samples}"
        );
    }
    println!("criterion 5 PASS: DBSCAN matches the brute-force reference on 100 random instances");
}

/// Criterion 6: at full retained rank, embedding dot products reconstruct
/// the centered kernel within 1e-6 relative Frobenius error (N <= 30).
#[test]
fn criterion_6_kernel_pca_fidelity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6001);
    for case in 0..100 {
        let n = rng.random_range(2..=30);
        let vectors: Vec<FeatureVector> = (0..n)
            .map(|i| {
                let nnz = rng.random_range(1..=8);
                let entries: Vec<(u32, f64)> = (0..nnz)
                    .map(|_| (rng.random_range(0..40u32), rng.random_range(0.05..3.0)))
                    .collect();
                FeatureVector::new(format!("d{i}"), entries)
            })
            .collect();

        let reduced = kernel_pca(&vectors, 250).unwrap();

        // centered kernel straight from the definition
        let mut kernel = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..n {
                kernel[i][j] = vectors[i].dot_sparse(&vectors[j]);
            }
        }
        let grand: f64 = kernel.iter().flatten().sum::<f64>() / (n * n) as f64;
        let row_mean: Vec<f64> = kernel
            .iter()
            .map(|row| row.iter().sum::<f64>() / n as f64)
            .collect();

        let mut err = 0.0f64;
        let mut norm = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let expected = kernel[i][j] - row_mean[i] - row_mean[j] + grand;
                let got: f64 = reduced.rows[i]
                    .iter()
                    .zip(&reduced.rows[j])
                    .map(|(a, b)| a * b)
                    .sum();
                err += (got - expected).powi(2);
                norm += expected * expected;
            }
        }
        if norm > 0.0 {
            let rel = (err / norm).sqrt();
            assert!(
                rel < 1e-6,
                "case {case}: relative Frobenius error {rel:.3e}"
            );
        }
    }
    println!("criterion 6 PASS: centered kernel reconstructed within 1e-6 on 100 random instances");
}

/// Criterion 7: 100% training accuracy on a linearly separable two-class
/// set within the default epoch budget, and bit-identical weights across
/// repeated runs with one seed.
#[test]
fn criterion_7_separable_svm_sanity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7001);
    let mut docs = Vec::new();
    let mut labels = Vec::new();
    for i in 0..40 {
        // class decided by which of two disjoint term groups dominates
        let (word, label) = if i % 2 == 0 {
            ("aurora", "north")
        } else {
            ("sirocco", "south")
        };
        let fill = rng.random_range(1..4);
        let mut tokens = vec![word.to_string(); 3];
        tokens.extend((0..fill).map(|k| format!("shared{k}")));
        docs.push(textscope::preprocess::TokenizedDoc {
            id: format!("d{i}"),
            tokens,
        });
        labels.push(label.to_string());
    }
    let vocab = build_vocabulary(&docs).unwrap();
    let vectors = vectorize_corpus(&docs, &vocab);
    let config = TrainConfig {
        seed: 7001,
        ..TrainConfig::default()
    };

    let model = train(&vectors, &labels, &vocab, &config).unwrap();
    let accuracy = evaluate(&model, &vectors, &labels).unwrap();
    assert_eq!(accuracy, 1.0, "training accuracy {accuracy}");

    let again = train(&vectors, &labels, &vocab, &config).unwrap();
    assert_eq!(model, again);
    for ci in 0..model.classes.len() {
        for (a, b) in model.weights(ci).iter().zip(again.weights(ci)) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(model.bias(ci).to_bits(), again.bias(ci).to_bits());
    }
    println!("criterion 7 PASS: separable set fit to 100% training accuracy, weights bit-identical across runs");
}

fn parse_svg_boxes(svg: &str) -> Vec<(f64, f64, f64, f64)> {
    let doc = roxmltree::Document::parse(svg).expect("SVG parses as XML");
    let mut boxes = Vec::new();
    for node in doc.descendants().filter(|n| n.has_tag_name("text")) {
        let x: f64 = node.attribute("x").unwrap().parse().unwrap();
        let y: f64 = node.attribute("y").unwrap().parse().unwrap();
        let font: f64 = node.attribute("font-size").unwrap().parse().unwrap();
        let term = node.text().unwrap_or_default();
        let (w, h) = text_extent(term, font);
        // y is the baseline, shifted 0.35em below the box center
        let cy = y - 0.35 * font;
        boxes.push((x - w / 2.0, cy - h / 2.0, x + w / 2.0, cy + h / 2.0));
    }
    boxes
}

fn overlaps(a: (f64, f64, f64, f64), b: (f64, f64, f64, f64)) -> bool {
    a.0 < b.2 && b.0 < a.2 && a.1 < b.3 && b.1 < a.3
}

/// Criterion 8: `analyze` on the planted corpus emits parseable,
/// non-overlapping SVG plus JSON for 3 scorers x 5 classes; `cluster` on a
/// two-topic disjoint-vocabulary corpus finds exactly 2 clusters with the
/// planted topic words in each cluster's top 10. Total < 60 s.
#[test]
fn criterion_8_end_to_end() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();

    // --- analyze on the planted corpus ---
    let planted = planted_corpus(&PlantedConfig::default());
    let input = dir.path().join("planted.jsonl");
    corpus_to_jsonl(&planted.corpus, &input);
    let analyze_out = dir.path().join("analyze");
    let config = RunConfig {
        input,
        format: CorpusFormat::Jsonl,
        out: analyze_out.clone(),
        seed: 8001,
        ..RunConfig::default()
    };
    run_analyze(&config).unwrap();

    let mut svg_count = 0;
    let mut json_count = 0;
    for class in &planted.corpus.label_set {
        for method in ["tfidf_sum", "lrp", "distinctive"] {
            let json_path = analyze_out.join(format!("{class}_{method}.json"));
            let value: serde_json::Value =
                serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
            assert_eq!(value["class"].as_str().unwrap(), class);
            assert!(!value["scores"].as_array().unwrap().is_empty());
            json_count += 1;

            let svg =
                fs::read_to_string(analyze_out.join(format!("{class}_{method}.svg"))).unwrap();
            let boxes = parse_svg_boxes(&svg);
            assert!(!boxes.is_empty(), "{class}_{method}.svg has no text");
            for i in 0..boxes.len() {
                for j in i + 1..boxes.len() {
                    assert!(
                        !overlaps(boxes[i], boxes[j]),
                        "{class}_{method}.svg: boxes {i} and {j} overlap"
                    );
                }
            }
            svg_count += 1;
        }
    }
    assert_eq!(json_count, 15);
    assert_eq!(svg_count, 15);

    // --- cluster on the two-topic corpus ---
    let topics = two_topic_corpus(12, 8002);
    let cluster_input = dir.path().join("topics.jsonl");
    corpus_to_jsonl(&topics.corpus, &cluster_input);
    let cluster_out = dir.path().join("cluster");
    let config = RunConfig {
        input: cluster_input,
        format: CorpusFormat::Jsonl,
        out: cluster_out.clone(),
        seed: 8002,
        ..RunConfig::default()
    };
    let report = run_cluster(&config).unwrap();
    assert_eq!(report.cluster_count, Some(2), "expected exactly 2 clusters");

    let topic_sets: [BTreeSet<&str>; 2] = [
        topics.topic_a_words.iter().map(String::as_str).collect(),
        topics.topic_b_words.iter().map(String::as_str).collect(),
    ];
    let mut matched = BTreeSet::new();
    for cluster in 0..2 {
        let value: serde_json::Value = serde_json::from_str(
            &fs::read_to_string(cluster_out.join(format!("cluster_{cluster}_distinctive.json")))
                .unwrap(),
        )
        .unwrap();
        let top: BTreeSet<&str> = value["scores"].as_array().unwrap()[..10]
            .iter()
            .map(|e| e["term"].as_str().unwrap())
            .collect();
        let which = topic_sets
            .iter()
            .position(|s| s == &top)
            .unwrap_or_else(|| panic!("cluster {cluster} top-10 {top:?} matches no topic"));
        matched.insert(which);
    }
    assert_eq!(matched.len(), 2, "both clusters matched the same topic");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 8 PASS: 15 JSON + 15 parseable non-overlapping SVG; 2 clusters with \
         planted topic words in their top-10 ({elapsed:?})"
    );
}

/// Criterion 9: the reported paper-scale accuracies need the public
/// 10k-paragraph corpus, which is not reproducible at desk scale. The
/// ignored test below checks them when the corpus is supplied locally.
#[test]
fn criterion_9_paper_scale_note() {
    println!(
        "criterion 9 SKIP (by design): paper-scale accuracies need the public corpus; \
         run `cargo test -p textscope --test acceptance -- --ignored --nocapture` with \
         TEXTSCOPE_CANCER_JSONL and/or TEXTSCOPE_PARTYPE_JSONL pointing at local JSONL \
         copies (fields: id, text, label)"
    );
}

/// Optional: train on a locally supplied full-scale corpus and require
/// held-out accuracy >= 0.90 for cancer types and >= 0.85 for paragraph
/// types (looser than the reported values since the original SVM settings
/// are not published).
#[test]
#[ignore = "needs the public full-scale corpus; see criterion_9_paper_scale_note"]
fn criterion_9_paper_scale_accuracy() {
    let cases = [
        ("TEXTSCOPE_CANCER_JSONL", 0.90),
        ("TEXTSCOPE_PARTYPE_JSONL", 0.85),
    ];
    let mut ran = false;
    for (var, floor) in cases {
        let Ok(path) = std::env::var(var) else {
            println!("criterion 9: {var} not set, skipping that corpus");
            continue;
        };
        ran = true;
        let corpus = textscope::corpus::load_jsonl(Path::new(&path)).unwrap();
        let docs = tokenize_corpus(&corpus);
        let labels: Vec<String> = corpus
            .documents
            .iter()
            .map(|d| d.label.clone().expect("labeled corpus"))
            .collect();
        let vocab = build_vocabulary(&docs).unwrap();
        let vectors = vectorize_corpus(&docs, &vocab);

        // 80/20 split
        let mut rng = ChaCha8Rng::seed_from_u64(9001);
        let mut order: Vec<usize> = (0..vectors.len()).collect();
        use rand::seq::SliceRandom;
        order.shuffle(&mut rng);
        let n_test = vectors.len() / 5;
        let (test_idx, train_idx) = order.split_at(n_test);
        let train_vecs: Vec<_> = train_idx.iter().map(|&i| vectors[i].clone()).collect();
        let train_labels: Vec<_> = train_idx.iter().map(|&i| labels[i].clone()).collect();
        let test_vecs: Vec<_> = test_idx.iter().map(|&i| vectors[i].clone()).collect();
        let test_labels: Vec<_> = test_idx.iter().map(|&i| labels[i].clone()).collect();

        let model = train(
            &train_vecs,
            &train_labels,
            &vocab,
            &TrainConfig {
                seed: 9001,
                ..TrainConfig::default()
            },
        )
        .unwrap();
        let accuracy = evaluate(&model, &test_vecs, &test_labels).unwrap();
        assert!(
            accuracy >= floor,
            "{var}: accuracy {accuracy:.3} below {floor}"
        );
        println!("criterion 9 PASS ({var}): held-out accuracy {accuracy:.3} >= {floor}");
    }
    assert!(
        ran,
        "set TEXTSCOPE_CANCER_JSONL and/or TEXTSCOPE_PARTYPE_JSONL to run this test"
    );
}
