//! Multi-class linear classification via one-vs-rest hinge-loss SGD.
//!
//! Each class gets an independent binary fit (class vs. rest) of a hinge
//! loss with L2 regularization, trained by stochastic subgradient descent
//! with per-epoch shuffling from a seeded RNG. Training is deterministic:
//! identical inputs and config produce bit-identical weights.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vectorize::{FeatureVector, Vocabulary};

const MODEL_FORMAT_VERSION: u32 = 1;

/// Step-size schedule, decaying as `1 / (lambda * (t + t0))` with `t0`
/// chosen so the first step has the configured initial rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LearningRateSchedule {
    InverseScaling { initial_rate: f64 },
}

impl LearningRateSchedule {
    fn t_offset(&self, lambda: f64) -> f64 {
        match self {
            LearningRateSchedule::InverseScaling { initial_rate } => 1.0 / (lambda * initial_rate),
        }
    }
}

/// Hyperparameters for [`train`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// L2 regularization strength (lambda).
    pub regularization_strength: f64,
    pub epochs: usize,
    pub seed: u64,
    pub schedule: LearningRateSchedule,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            regularization_strength: 1e-4,
            epochs: 50,
            seed: 0,
            schedule: LearningRateSchedule::InverseScaling { initial_rate: 1.0 },
        }
    }
}

/// Per-class weight vectors and biases of a trained linear classifier,
/// tied to the vocabulary it was trained against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub classes: Vec<String>,
    weights: Vec<Vec<f64>>,
    biases: Vec<f64>,
    vocab_fingerprint: String,
}

impl LinearModel {
    pub fn n_features(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    pub fn class_index(&self, class: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c == class)
            .ok_or_else(|| Error::UnknownClass(class.to_string()))
    }

    pub fn weights(&self, class_index: usize) -> &[f64] {
        &self.weights[class_index]
    }

    pub fn bias(&self, class_index: usize) -> f64 {
        self.biases[class_index]
    }

    pub fn vocab_fingerprint(&self) -> &str {
        &self.vocab_fingerprint
    }

    /// Errors unless the model was trained against `vocab`.
    pub fn check_vocabulary(&self, vocab: &Vocabulary) -> Result<()> {
        let fp = vocab.fingerprint();
        if fp != self.vocab_fingerprint {
            return Err(Error::FingerprintMismatch {
                model: self.vocab_fingerprint.clone(),
                vocab: fp,
            });
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = ModelFile {
            version: MODEL_FORMAT_VERSION,
            model: self.clone(),
        };
        let json = serde_json::to_string_pretty(&file).expect("model serializes");
        fs::write(path, json).map_err(|source| Error::Write {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file: ModelFile = serde_json::from_str(&content).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        if file.version != MODEL_FORMAT_VERSION {
            return Err(Error::ModelVersion {
                path: path.to_path_buf(),
                version: file.version,
            });
        }
        Ok(file.model)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    #[serde(flatten)]
    model: LinearModel,
}

/// Fits one binary hinge-loss problem: labels are +1 for the target class,
/// -1 otherwise. The weight vector is kept as `scale * w` so that the L2
/// shrink per step stays O(1) while gradient updates stay sparse.
fn fit_binary(
    vectors: &[FeatureVector],
    targets: &[f64],
    n_features: usize,
    config: &TrainConfig,
    seed: u64,
) -> (Vec<f64>, f64) {
    let lambda = config.regularization_strength;
    let t0 = config.schedule.t_offset(lambda);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..vectors.len()).collect();

    let mut w = vec![0.0f64; n_features];
    let mut scale = 1.0f64;
    let mut bias = 0.0f64;
    let mut t = 0u64;

    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for &k in &order {
            t += 1;
            let eta = 1.0 / (lambda * (t as f64 + t0));
            let x = &vectors[k];
            let y = targets[k];
            let margin = y * (scale * x.dot(&w) + bias);
            // shrink from the L2 term applies to the weights only
            scale *= 1.0 - eta * lambda;
            if margin < 1.0 {
                let step = eta * y / scale;
                for &(i, v) in x.entries() {
                    w[i as usize] += step * v;
                }
                bias += eta * y;
            }
        }
    }

    for v in &mut w {
        *v *= scale;
    }
    (w, bias)
}

/// Trains a one-vs-rest linear SVM. `labels` pairs with `vectors` by
/// position; classes are the sorted distinct labels.
pub fn train(
    vectors: &[FeatureVector],
    labels: &[String],
    vocab: &Vocabulary,
    config: &TrainConfig,
) -> Result<LinearModel> {
    if vectors.len() != labels.len() {
        return Err(Error::LabelMismatch {
            labels: labels.len(),
            vectors: vectors.len(),
        });
    }
    let mut classes: Vec<String> = labels.to_vec();
    classes.sort();
    classes.dedup();
    if classes.len() < 2 {
        return Err(Error::NeedTwoClasses(classes.len()));
    }

    let n_features = vocab.len();
    let mut weights = Vec::with_capacity(classes.len());
    let mut biases = Vec::with_capacity(classes.len());
    for (ci, class) in classes.iter().enumerate() {
        let targets: Vec<f64> = labels
            .iter()
            .map(|l| if l == class { 1.0 } else { -1.0 })
            .collect();
        let (w, b) = fit_binary(
            vectors,
            &targets,
            n_features,
            config,
            config.seed.wrapping_add(ci as u64),
        );
        weights.push(w);
        biases.push(b);
    }

    Ok(LinearModel {
        classes,
        weights,
        biases,
        vocab_fingerprint: vocab.fingerprint(),
    })
}

/// Raw affine score `b_c + w_c . x` for one class.
pub fn score(model: &LinearModel, vector: &FeatureVector, class: &str) -> Result<f64> {
    let ci = model.class_index(class)?;
    Ok(model.biases[ci] + vector.dot(&model.weights[ci]))
}

/// Highest-scoring class; ties go to the earlier class in `classes` order.
pub fn predict<'m>(model: &'m LinearModel, vector: &FeatureVector) -> &'m str {
    let mut best = 0;
    let mut best_score = f64::NEG_INFINITY;
    for ci in 0..model.classes.len() {
        let s = model.biases[ci] + vector.dot(&model.weights[ci]);
        if s > best_score {
            best_score = s;
            best = ci;
        }
    }
    &model.classes[best]
}

/// Fraction of predictions matching the given labels.
pub fn evaluate(model: &LinearModel, vectors: &[FeatureVector], labels: &[String]) -> Result<f64> {
    if vectors.len() != labels.len() {
        return Err(Error::LabelMismatch {
            labels: labels.len(),
            vectors: vectors.len(),
        });
    }
    if vectors.is_empty() {
        return Ok(0.0);
    }
    let correct = vectors
        .iter()
        .zip(labels)
        .filter(|(v, l)| predict(model, v) == l.as_str())
        .count();
    Ok(correct as f64 / vectors.len() as f64)
}
