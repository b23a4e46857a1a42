//! Sparse symmetric weighted graphs: storage, file ingestion, synthetic
//! generation, nearest-neighbor construction, and perturbation.

mod components;
mod edge_list;
mod features;
mod matrix_market;
mod noise;
mod sbm;

pub use components::{connected_components, ComponentLabeling};
pub use edge_list::{load_edge_list, write_edge_list};
pub use features::{knn_graph, FeatureMatrix, KnnOptions, Similarity};
pub use matrix_market::load_matrix_market;
pub use noise::add_noise_edges;
pub use sbm::{generate_sbm, inter_block_fraction, SbmParams};

use crate::error::{Error, Result};

/// Symmetric weighted graph in compressed sparse row form.
///
/// Invariants, enforced at construction:
/// - edge `(i, j, w)` is stored in both row `i` and row `j` with the same `w`;
/// - no self-loops, no duplicate entries, all weights strictly positive;
/// - `degree(i)` is the sum of weights incident to `i`.
///
/// Immutable after construction and safe to share across threads.
#[derive(Clone, Debug)]
pub struct SparseGraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    degrees: Vec<f64>,
}

impl SparseGraph {
    /// Build a graph from undirected edges, each given once in either
    /// orientation. Exact repeats of an edge collapse to one entry; repeats
    /// with different weights are an error, as are self-loops and
    /// non-positive or non-finite weights.
    pub fn from_undirected_edges(
        n_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut canon: Vec<(usize, usize, f64)> = Vec::new();
        for (u, v, w) in edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {n_vertices} vertices"
                )));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) has non-positive weight {w}"
                )));
            }
            canon.push((u.min(v), u.max(v), w));
        }
        canon.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then(a.2.total_cmp(&b.2)));
        canon.dedup_by(|next, prev| {
            (next.0, next.1) == (prev.0, prev.1) && next.2 == prev.2
        });
        for pair in canon.windows(2) {
            if (pair[0].0, pair[0].1) == (pair[1].0, pair[1].1) {
                return Err(Error::invalid(format!(
                    "conflicting weights {} and {} for edge ({}, {})",
                    pair[0].2, pair[1].2, pair[0].0, pair[0].1
                )));
            }
        }
        Ok(Self::from_canonical_edges(n_vertices, &canon))
    }

    /// Build from canonical `(u, v, w)` triples with `u < v`, no duplicates,
    /// positive weights. Callers guarantee validity.
    pub(crate) fn from_canonical_edges(n_vertices: usize, edges: &[(usize, usize, f64)]) -> Self {
        let mut counts = vec![0usize; n_vertices + 1];
        for &(u, v, _) in edges {
            counts[u + 1] += 1;
            counts[v + 1] += 1;
        }
        let mut offsets = counts;
        for i in 0..n_vertices {
            offsets[i + 1] += offsets[i];
        }
        let nnz = offsets[n_vertices];
        let mut targets = vec![0usize; nnz];
        let mut weights = vec![0f64; nnz];
        let mut cursor = offsets.clone();
        for &(u, v, w) in edges {
            targets[cursor[u]] = v;
            weights[cursor[u]] = w;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            weights[cursor[v]] = w;
            cursor[v] += 1;
        }
        // Rows come out sorted except for interleaving of the two orientations;
        // restore order per row.
        for v in 0..n_vertices {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            let mut row: Vec<(usize, f64)> = targets[lo..hi]
                .iter()
                .copied()
                .zip(weights[lo..hi].iter().copied())
                .collect();
            row.sort_unstable_by_key(|&(t, _)| t);
            for (k, (t, w)) in row.into_iter().enumerate() {
                targets[lo + k] = t;
                weights[lo + k] = w;
            }
        }
        let degrees = (0..n_vertices)
            .map(|v| weights[offsets[v]..offsets[v + 1]].iter().sum())
            .collect();
        Self {
            offsets,
            targets,
            weights,
            degrees,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn n_edges(&self) -> usize {
        self.targets.len() / 2
    }

    /// Weighted degree of `v`.
    pub fn degree(&self, v: usize) -> f64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Neighbor indices and weights of `v`, sorted by index.
    pub fn row(&self, v: usize) -> (&[usize], &[f64]) {
        let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
        (&self.targets[lo..hi], &self.weights[lo..hi])
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (t, w) = self.row(v);
        t.iter().copied().zip(w.iter().copied())
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        let (t, w) = self.row(u);
        t.binary_search(&v).ok().map(|k| w[k])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_weight(u, v).is_some()
    }

    /// Undirected edges as `(u, v, w)` with `u < v`, ordered by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n_vertices()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Sum of all edge weights, each undirected edge counted once.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum::<f64>() / 2.0
    }

    /// Recompute degrees from adjacency; used by tests to check the stored
    /// values never drift.
    pub fn recompute_degrees(&self) -> Vec<f64> {
        (0..self.n_vertices())
            .map(|v| self.row(v).1.iter().sum())
            .collect()
    }
}

/// Per-vertex ground-truth class labels, contiguous from 0.
#[derive(Clone, Debug)]
pub struct GroundTruth {
    labels: Vec<usize>,
    n_classes: usize,
}

impl GroundTruth {
    /// Validates that class indices are contiguous from 0.
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::invalid("ground truth must be nonempty"));
        }
        let n_classes = labels.iter().max().unwrap() + 1;
        let mut seen = vec![false; n_classes];
        for &l in &labels {
            seen[l] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::invalid(format!(
                "class indices not contiguous: class {missing} is absent"
            )));
        }
        Ok(Self { labels, n_classes })
    }

    /// Load a label file: one 0-based integer per line, line `i` labeling
    /// vertex `i`. `#` comment lines and blank lines are skipped.
    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let mut labels = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let label = line.parse::<usize>().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                msg: format!("expected a nonnegative integer label, got {line:?}"),
            })?;
            labels.push(label);
        }
        Self::from_labels(labels)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_symmetric_csr_with_degrees() {
        let g = SparseGraph::from_undirected_edges(3, [(0, 1, 2.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.degree(0), 2.0);
        assert_eq!(g.degree(1), 3.0);
        assert_eq!(g.degree(2), 1.0);
        assert_eq!(g.edge_weight(1, 0), Some(2.0));
        assert_eq!(g.edge_weight(0, 2), None);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 2.0), (1, 2, 1.0)]);
    }

    #[test]
    fn rejects_self_loop_and_bad_weights() {
        assert!(SparseGraph::from_undirected_edges(2, [(0, 0, 1.0)]).is_err());
        assert!(SparseGraph::from_undirected_edges(2, [(0, 1, 0.0)]).is_err());
        assert!(SparseGraph::from_undirected_edges(2, [(0, 1, -1.0)]).is_err());
        assert!(SparseGraph::from_undirected_edges(2, [(0, 1, f64::NAN)]).is_err());
        assert!(SparseGraph::from_undirected_edges(2, [(0, 2, 1.0)]).is_err());
    }

    #[test]
    fn exact_duplicates_collapse_conflicts_error() {
        let g =
            SparseGraph::from_undirected_edges(2, [(0, 1, 1.5), (1, 0, 1.5)]).unwrap();
        assert_eq!(g.n_edges(), 1);
        assert!(SparseGraph::from_undirected_edges(2, [(0, 1, 1.0), (1, 0, 2.0)]).is_err());
    }

    #[test]
    fn stored_degrees_match_recomputation() {
        let g = SparseGraph::from_undirected_edges(
            5,
            [
                (0, 1, 0.25),
                (0, 4, 1.75),
                (1, 2, 3.5),
                (2, 3, 0.125),
                (3, 4, 2.0),
                (1, 3, 1.0),
            ],
        )
        .unwrap();
        assert_eq!(g.recompute_degrees(), g.degrees().to_vec());
    }

    #[test]
    fn ground_truth_requires_contiguous_classes() {
        assert!(GroundTruth::from_labels(vec![0, 1, 1, 2]).is_ok());
        assert!(GroundTruth::from_labels(vec![0, 2, 2]).is_err());
        assert!(GroundTruth::from_labels(vec![]).is_err());
    }
}
