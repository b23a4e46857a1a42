//! Exact k-nearest-neighbor graph construction over sparse feature rows.
//!
//! Supports cosine similarity over tf-idf-weighted or raw features (the
//! usual choice for term-count data) and a Gaussian kernel over Euclidean
//! distance with the bandwidth set from the mean k-th-neighbor distance
//! (the usual choice for raw pixel data). The kNN selections are
//! symmetrized by union: an edge is kept when either endpoint selected it.

use super::SparseGraph;
use crate::error::{Error, Result};

/// Sparse nonnegative feature rows (term counts, pixel intensities, ...).
#[derive(Clone, Debug)]
pub struct FeatureMatrix {
    n_cols: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl FeatureMatrix {
    /// Build from sparse rows of `(column, value)` pairs.
    pub fn from_rows(n_cols: usize, rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        let mut sorted_rows = Vec::with_capacity(rows.len());
        for (i, mut row) in rows.into_iter().enumerate() {
            for &(c, v) in &row {
                if c >= n_cols {
                    return Err(Error::invalid(format!(
                        "row {i}: column {c} out of range for {n_cols} columns"
                    )));
                }
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::invalid(format!(
                        "row {i}: feature values must be finite and nonnegative, got {v}"
                    )));
                }
            }
            row.sort_unstable_by_key(|&(c, _)| c);
            row.retain(|&(_, v)| v != 0.0);
            if row.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::invalid(format!("row {i}: duplicate column index")));
            }
            sorted_rows.push(row);
        }
        Ok(Self {
            n_cols,
            rows: sorted_rows,
        })
    }

    /// Build from dense rows.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let n_cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        Self::from_rows(
            n_cols,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .copied()
                        .enumerate()
                        .filter(|&(_, v)| v != 0.0)
                        .collect()
                })
                .collect(),
        )
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }
}

/// Similarity used to rank neighbors and weight edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Similarity {
    /// Cosine between tf-idf-weighted rows: tf = raw count,
    /// idf = ln(n_rows / document frequency), no smoothing.
    CosineTfIdf,
    /// Cosine between rows as given.
    CosineRaw,
    /// exp(-d^2 / 2 sigma^2) with sigma the mean distance to the k-th
    /// nearest neighbor.
    GaussianEuclidean,
}

#[derive(Clone, Copy, Debug)]
pub struct KnnOptions {
    pub k: usize,
    pub similarity: Similarity,
    /// Replace edge weights with 1.0 after neighbor selection.
    pub binarize: bool,
}

impl KnnOptions {
    pub fn new(k: usize, similarity: Similarity) -> Self {
        Self {
            k,
            similarity,
            binarize: false,
        }
    }

    pub fn binarized(mut self) -> Self {
        self.binarize = true;
        self
    }
}

/// Build the symmetrized k-nearest-neighbor graph of `features`.
pub fn knn_graph(features: &FeatureMatrix, opts: &KnnOptions) -> Result<SparseGraph> {
    let n = features.n_rows();
    if opts.k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if opts.k >= n {
        return Err(Error::invalid(format!(
            "k = {} requires more than {} rows",
            opts.k, n
        )));
    }
    match opts.similarity {
        Similarity::CosineRaw => cosine_knn(features, opts, false),
        Similarity::CosineTfIdf => cosine_knn(features, opts, true),
        Similarity::GaussianEuclidean => gaussian_knn(features, opts),
    }
}

fn dot(a: &[(usize, f64)], b: &[(usize, f64)]) -> f64 {
    let mut sum = 0.0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                sum += a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    sum
}

fn tfidf_rows(features: &FeatureMatrix) -> Result<Vec<Vec<(usize, f64)>>> {
    let n = features.n_rows();
    let mut doc_freq = vec![0usize; features.n_cols()];
    for i in 0..n {
        for &(c, _) in features.row(i) {
            doc_freq[c] += 1;
        }
    }
    let idf: Vec<f64> = doc_freq
        .iter()
        .map(|&df| if df == 0 { 0.0 } else { (n as f64 / df as f64).ln() })
        .collect();
    Ok((0..n)
        .map(|i| {
            features
                .row(i)
                .iter()
                .map(|&(c, v)| (c, v * idf[c]))
                .filter(|&(_, v)| v != 0.0)
                .collect()
        })
        .collect())
}

fn cosine_knn(features: &FeatureMatrix, opts: &KnnOptions, tfidf: bool) -> Result<SparseGraph> {
    let n = features.n_rows();
    let rows: Vec<Vec<(usize, f64)>> = if tfidf {
        tfidf_rows(features)?
    } else {
        (0..n).map(|i| features.row(i).to_vec()).collect()
    };
    let mut norms = vec![0.0f64; n];
    for (i, row) in rows.iter().enumerate() {
        norms[i] = dot(row, row).sqrt();
        if norms[i] == 0.0 {
            let what = if tfidf { "zero norm after tf-idf weighting" } else { "zero norm" };
            return Err(Error::invalid(format!(
                "row {i} has {what}; cosine similarity is undefined"
            )));
        }
    }

    let mut selected: Vec<(usize, usize, f64)> = Vec::new();
    let mut sims: Vec<(f64, usize)> = Vec::with_capacity(n - 1);
    for i in 0..n {
        sims.clear();
        for j in 0..n {
            if j == i {
                continue;
            }
            let s = dot(&rows[i], &rows[j]) / (norms[i] * norms[j]);
            if s > 0.0 {
                sims.push((s, j));
            }
        }
        if sims.is_empty() {
            return Err(Error::invalid(format!(
                "row {i} has no positive-similarity neighbor"
            )));
        }
        sims.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(s, j) in sims.iter().take(opts.k) {
            selected.push((i.min(j), i.max(j), if opts.binarize { 1.0 } else { s }));
        }
    }
    build_union(n, selected)
}

fn gaussian_knn(features: &FeatureMatrix, opts: &KnnOptions) -> Result<SparseGraph> {
    let n = features.n_rows();
    let rows: Vec<&[(usize, f64)]> = (0..n).map(|i| features.row(i)).collect();
    let sq_norms: Vec<f64> = rows.iter().map(|r| dot(r, r)).collect();

    // Pass 1: nearest neighbors by squared distance, and the bandwidth from
    // the mean distance to each row's k-th neighbor.
    let mut picks: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
    let mut kth_sum = 0.0;
    let mut dists: Vec<(f64, usize)> = Vec::with_capacity(n - 1);
    for i in 0..n {
        dists.clear();
        for j in 0..n {
            if j == i {
                continue;
            }
            let d2 = (sq_norms[i] + sq_norms[j] - 2.0 * dot(rows[i], rows[j])).max(0.0);
            dists.push((d2, j));
        }
        dists.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let take: Vec<(usize, f64)> = dists.iter().take(opts.k).map(|&(d2, j)| (j, d2)).collect();
        kth_sum += take.last().unwrap().1.sqrt();
        picks.push(take);
    }
    let sigma = kth_sum / n as f64;

    let mut selected: Vec<(usize, usize, f64)> = Vec::new();
    for (i, take) in picks.iter().enumerate() {
        for &(j, d2) in take {
            let w = if opts.binarize {
                1.0
            } else if sigma == 0.0 {
                1.0 // all rows identical
            } else {
                (-d2 / (2.0 * sigma * sigma)).exp()
            };
            selected.push((i.min(j), i.max(j), w));
        }
    }
    build_union(n, selected)
}

/// Union-symmetrize: both endpoints selecting the same pair produce the same
/// weight, so duplicates collapse in the constructor.
fn build_union(n: usize, mut selected: Vec<(usize, usize, f64)>) -> Result<SparseGraph> {
    selected.retain(|&(_, _, w)| w > 0.0);
    SparseGraph::from_undirected_edges(n, selected)
}
