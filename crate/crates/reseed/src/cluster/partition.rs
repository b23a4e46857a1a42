use crate::error::{Error, Result};

/// Assignment of every vertex to one of `n_clusters` clusters.
///
/// Clusters are disjoint and cover the vertex set by construction. Empty
/// clusters can occur transiently during a run; [`Partition::empty_clusters`]
/// reports them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    n_clusters: usize,
}

impl Partition {
    pub fn new(assignment: Vec<usize>, n_clusters: usize) -> Result<Self> {
        if n_clusters == 0 {
            return Err(Error::invalid("a partition needs at least one cluster"));
        }
        if let Some(&bad) = assignment.iter().find(|&&c| c >= n_clusters) {
            return Err(Error::invalid(format!(
                "cluster index {bad} out of range for {n_clusters} clusters"
            )));
        }
        Ok(Self {
            assignment,
            n_clusters,
        })
    }

    /// Uniformly random assignment from the given RNG.
    pub(crate) fn random(n_vertices: usize, n_clusters: usize, rng: &mut impl rand::Rng) -> Self {
        let assignment = (0..n_vertices).map(|_| rng.gen_range(0..n_clusters)).collect();
        Self {
            assignment,
            n_clusters,
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.n_clusters];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    /// Vertex lists per cluster, each sorted ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.n_clusters];
        for (v, &c) in self.assignment.iter().enumerate() {
            members[c].push(v);
        }
        members
    }

    pub fn empty_clusters(&self) -> Vec<usize> {
        self.cluster_sizes()
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s == 0)
            .map(|(c, _)| c)
            .collect()
    }

    /// Fraction of vertices assigned differently in `other`.
    pub fn changed_fraction(&self, other: &Partition) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        let changed = self
            .assignment
            .iter()
            .zip(&other.assignment)
            .filter(|(a, b)| a != b)
            .count();
        changed as f64 / self.len().max(1) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_cluster_range() {
        assert!(Partition::new(vec![0, 1, 2], 3).is_ok());
        assert!(Partition::new(vec![0, 3], 3).is_err());
        assert!(Partition::new(vec![], 0).is_err());
    }

    #[test]
    fn members_and_sizes_agree() {
        let p = Partition::new(vec![1, 0, 1, 1], 3).unwrap();
        assert_eq!(p.cluster_sizes(), vec![1, 3, 0]);
        assert_eq!(p.members(), vec![vec![1], vec![0, 2, 3], vec![]]);
        assert_eq!(p.empty_clusters(), vec![2]);
    }

    #[test]
    fn changed_fraction_counts_mismatches() {
        let a = Partition::new(vec![0, 0, 1, 1], 2).unwrap();
        let b = Partition::new(vec![0, 1, 1, 0], 2).unwrap();
        assert_eq!(a.changed_fraction(&b), 0.5);
        assert_eq!(a.changed_fraction(&a), 0.0);
    }
}
