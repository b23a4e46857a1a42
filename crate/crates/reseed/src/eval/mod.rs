//! Cluster-quality metrics and run instrumentation.

mod trace;

pub use trace::{
    aggregate_runs, time_to_purity, write_aggregate_csv, write_trace_csv, AggregatePoint,
    AggregateTrace, RunTrace, TraceRecord,
};

use crate::cluster::Partition;
use crate::error::{Error, Result};
use crate::graph::GroundTruth;

/// Counts of ground-truth classes inside each computed cluster:
/// `counts[r][i]` is the number of vertices of class `i` in cluster `r`.
#[derive(Clone, Debug)]
pub struct ConfusionCounts {
    counts: Vec<Vec<usize>>,
    n_total: usize,
}

impl ConfusionCounts {
    pub fn new(p: &Partition, gt: &GroundTruth) -> Result<Self> {
        Self::from_assignment(p.assignment(), p.n_clusters(), gt)
    }

    pub fn from_assignment(assignment: &[usize], n_clusters: usize, gt: &GroundTruth) -> Result<Self> {
        if assignment.len() != gt.len() {
            return Err(Error::invalid(format!(
                "partition covers {} vertices but ground truth has {}",
                assignment.len(),
                gt.len()
            )));
        }
        let mut counts = vec![vec![0usize; gt.n_classes()]; n_clusters];
        for (&c, &t) in assignment.iter().zip(gt.labels()) {
            counts[c][t] += 1;
        }
        Ok(Self {
            counts,
            n_total: assignment.len(),
        })
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    /// Cluster sizes (row sums).
    pub fn cluster_sizes(&self) -> Vec<usize> {
        self.counts.iter().map(|row| row.iter().sum()).collect()
    }

    /// Ground-truth class sizes (column sums).
    pub fn class_sizes(&self) -> Vec<usize> {
        let n_classes = self.counts.first().map_or(0, |r| r.len());
        (0..n_classes)
            .map(|i| self.counts.iter().map(|row| row[i]).sum())
            .collect()
    }

    /// Fraction of vertices that belong to the dominant ground-truth class
    /// of their computed cluster: `(1/N) sum_r max_i counts[r][i]`.
    pub fn purity(&self) -> f64 {
        let hits: usize = self
            .counts
            .iter()
            .map(|row| row.iter().copied().max().unwrap_or(0))
            .sum();
        hits as f64 / self.n_total as f64
    }
}

/// Purity of `p` against `gt`; see [`ConfusionCounts::purity`].
pub fn purity(p: &Partition, gt: &GroundTruth) -> Result<f64> {
    Ok(ConfusionCounts::new(p, gt)?.purity())
}
