//! Document clustering for unlabeled corpora.
//!
//! The tf-idf vectors are first reduced with linear kernel PCA (an
//! eigendecomposition of the double-centered dot-product matrix), which
//! removes noise and creates overlap between the sparse vectors. DBSCAN
//! then grows clusters over the pairwise cosine distances, leaving
//! low-density documents as noise.

use std::collections::VecDeque;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::vectorize::FeatureVector;

/// Relative eigenvalue cutoff: directions below this fraction of the
/// largest eigenvalue are numerically zero and dropped.
const EIGENVALUE_CUTOFF: f64 = 1e-10;

/// Documents embedded in at most `component_count` dimensions. Row dot
/// products reproduce the centered kernel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedMatrix {
    pub rows: Vec<Vec<f64>>,
    pub component_count: usize,
}

/// Projects the vectors onto the top principal components of the centered
/// linear kernel. At most `max_components` are kept; centering removes one
/// dimension, so the result has at most `N - 1` components.
pub fn kernel_pca(vectors: &[FeatureVector], max_components: usize) -> Result<ReducedMatrix> {
    let n = vectors.len();
    if n < 2 {
        return Err(Error::TooFewDocuments { need: 2, got: n });
    }

    let mut kernel = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = vectors[i].dot_sparse(&vectors[j]);
            kernel[(i, j)] = v;
            kernel[(j, i)] = v;
        }
    }

    // double centering: K' = K - row means - col means + grand mean
    let row_means: Vec<f64> = (0..n).map(|i| kernel.row(i).sum() / n as f64).collect();
    let grand_mean = row_means.iter().sum::<f64>() / n as f64;
    let mut centered = kernel;
    for i in 0..n {
        for j in 0..n {
            centered[(i, j)] += grand_mean - row_means[i] - row_means[j];
        }
    }

    let eig = centered.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let largest = eig.eigenvalues[order[0]].max(0.0);
    let cutoff = EIGENVALUE_CUTOFF * largest;
    let kept: Vec<usize> = order
        .into_iter()
        .filter(|&i| eig.eigenvalues[i] > cutoff && eig.eigenvalues[i] > 0.0)
        .take(max_components)
        .collect();

    let mut rows = vec![vec![0.0f64; kept.len()]; n];
    for (j, &ei) in kept.iter().enumerate() {
        let scale = eig.eigenvalues[ei].sqrt();
        let column = eig.eigenvectors.column(ei);
        // fix the eigenvector sign so output does not depend on solver quirks
        let mut max_abs = 0.0f64;
        let mut sign = 1.0f64;
        for k in 0..n {
            if column[k].abs() > max_abs {
                max_abs = column[k].abs();
                sign = if column[k] < 0.0 { -1.0 } else { 1.0 };
            }
        }
        for k in 0..n {
            rows[k][j] = sign * scale * column[k];
        }
    }

    Ok(ReducedMatrix {
        component_count: kept.len(),
        rows,
    })
}

/// `1 - cos(u, v)`, in [0, 2]. A zero vector has no direction; its distance
/// to anything is defined as 1 and the case is logged.
pub fn cosine_distance(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        log::warn!("cosine distance involving a zero vector; using orthogonality convention (1.0)");
        return 1.0;
    }
    1.0 - dot / (nu * nv)
}

/// Cluster id per document, or noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterLabel {
    Cluster(usize),
    Noise,
}

impl ClusterLabel {
    pub fn is_noise(&self) -> bool {
        matches!(self, ClusterLabel::Noise)
    }
}

/// DBSCAN output: one label per document (aligned with the input rows) and
/// the number of clusters. Cluster ids are 0..cluster_count-1, renumbered
/// by descending cluster size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterAssignment {
    pub labels: Vec<ClusterLabel>,
    pub cluster_count: usize,
}

impl ClusterAssignment {
    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_noise()).count()
    }

    pub fn cluster_size(&self, cluster: usize) -> usize {
        self.labels
            .iter()
            .filter(|l| matches!(l, ClusterLabel::Cluster(c) if *c == cluster))
            .count()
    }

    /// `[{"id": ..., "cluster": <int or "noise">}]` in document order.
    pub fn to_json_string(&self, ids: &[String]) -> String {
        let rows: Vec<serde_json::Value> = ids
            .iter()
            .zip(&self.labels)
            .map(|(id, label)| {
                let cluster = match label {
                    ClusterLabel::Cluster(c) => serde_json::json!(c),
                    ClusterLabel::Noise => serde_json::json!("noise"),
                };
                serde_json::json!({ "id": id, "cluster": cluster })
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("assignment serializes")
    }
}

/// Standard DBSCAN over pairwise cosine distances.
///
/// A core point has at least `min_samples` points (itself included) within
/// `eps`. Clusters grow from unvisited core points in document order;
/// border points keep the first cluster that reaches them, which pins down
/// DBSCAN's well-known order dependence.
pub fn dbscan(matrix: &ReducedMatrix, eps: f64, min_samples: usize) -> ClusterAssignment {
    assert!(eps > 0.0, "eps must be positive");
    assert!(min_samples >= 1, "min_samples must be at least 1");
    let n = matrix.rows.len();

    let neighbors: Vec<Vec<usize>> = matrix
        .rows
        .iter()
        .map(|row| {
            (0..n)
                .filter(|&j| cosine_distance(row, &matrix.rows[j]) <= eps)
                .collect()
        })
        .collect();
    let core: Vec<bool> = neighbors.iter().map(|nb| nb.len() >= min_samples).collect();

    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut cluster_count = 0usize;
    for i in 0..n {
        if label[i].is_some() || !core[i] {
            continue;
        }
        let id = cluster_count;
        cluster_count += 1;
        label[i] = Some(id);
        let mut queue = VecDeque::from([i]);
        while let Some(p) = queue.pop_front() {
            if !core[p] {
                continue; // border points never expand the cluster
            }
            for &q in &neighbors[p] {
                if label[q].is_none() {
                    label[q] = Some(id);
                    queue.push_back(q);
                }
            }
        }
    }

    renumber_by_size(label, cluster_count)
}

/// Renumbers clusters 0..K-1 by descending size; ties keep creation order.
fn renumber_by_size(label: Vec<Option<usize>>, cluster_count: usize) -> ClusterAssignment {
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
    let labels = label
        .into_iter()
        .map(|l| match l {
            Some(c) => ClusterLabel::Cluster(remap[c]),
            None => ClusterLabel::Noise,
        })
        .collect();
    ClusterAssignment {
        labels,
        cluster_count,
    }
}
