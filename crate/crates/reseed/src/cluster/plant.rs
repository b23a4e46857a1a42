//! Seed planting: column r of the indicator matrix becomes the indicator
//! function of a uniform random subset of cluster r.

use rand::Rng;

use super::indicator::{IndicatorMatrix, SparseColumn};
use super::partition::Partition;
use crate::error::{Error, Result};
use crate::rng::{stream, STREAM_PLANT};

/// Result of one planting round.
#[derive(Clone, Debug)]
pub struct Planted {
    pub indicator: IndicatorMatrix,
    /// Seeds drawn per cluster. Smaller than the requested count when the
    /// smallest nonempty cluster could not supply it; the caller is expected
    /// to reset its schedule to this value.
    pub seeds_used: usize,
}

/// Sample `m_requested` seeds uniformly without replacement inside each
/// cluster. If any nonempty cluster is smaller than the request, the count
/// used for *all* clusters drops to the smallest nonempty cluster size. An
/// empty cluster receives one seed drawn uniformly from the whole vertex
/// set so its column can still propagate.
///
/// Each `(iteration, cluster)` pair draws from its own RNG stream, so the
/// sample is independent of evaluation order.
pub fn plant(
    partition: &Partition,
    m_requested: usize,
    seed: u64,
    iteration: u64,
) -> Result<Planted> {
    if m_requested == 0 {
        return Err(Error::invalid("seed count must be at least 1"));
    }
    if partition.n_clusters() < 2 {
        return Err(Error::invalid("planting needs at least 2 clusters"));
    }
    let n = partition.len();
    let members = partition.members();
    let smallest_nonempty = members
        .iter()
        .filter(|m| !m.is_empty())
        .map(|m| m.len())
        .min()
        .expect("a partition always has a nonempty cluster");
    let seeds_used = m_requested.min(smallest_nonempty);

    let mut columns = Vec::with_capacity(members.len());
    for (r, cluster) in members.iter().enumerate() {
        let mut rng = stream(seed, &[STREAM_PLANT, iteration, r as u64]);
        let mut picked: Vec<usize> = if cluster.is_empty() {
            vec![rng.gen_range(0..n)]
        } else {
            rand::seq::index::sample(&mut rng, cluster.len(), seeds_used)
                .into_iter()
                .map(|k| cluster[k])
                .collect()
        };
        picked.sort_unstable();
        let values = vec![1.0; picked.len()];
        columns.push(SparseColumn::from_sorted(picked, values));
    }
    Ok(Planted {
        indicator: IndicatorMatrix::from_columns(n, columns),
        seeds_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_sampling_fills_each_column() {
        let p = Partition::new(vec![0, 0, 1, 1], 2).unwrap();
        let planted = plant(&p, 2, 42, 0).unwrap();
        assert_eq!(planted.seeds_used, 2);
        let f = planted.indicator;
        assert_eq!(f.column(0).0, &[0, 1]);
        assert_eq!(f.column(1).0, &[2, 3]);
        assert!(f.column(0).1.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn request_clips_to_smallest_nonempty_cluster() {
        let p = Partition::new(vec![0, 1, 1, 1], 2).unwrap();
        let planted = plant(&p, 3, 42, 0).unwrap();
        assert_eq!(planted.seeds_used, 1);
        assert_eq!(planted.indicator.column(0).0.len(), 1);
        assert_eq!(planted.indicator.column(1).0.len(), 1);
    }

    #[test]
    fn empty_cluster_gets_a_fallback_seed() {
        let p = Partition::new(vec![1, 1, 1], 2).unwrap();
        let planted = plant(&p, 1, 42, 0).unwrap();
        let (idx, vals) = planted.indicator.column(0);
        assert_eq!(idx.len(), 1);
        assert!(idx[0] < 3);
        assert_eq!(vals, &[1.0]);
    }

    #[test]
    fn columns_are_supported_inside_their_clusters() {
        let p = Partition::new(vec![0, 1, 2, 0, 1, 2, 0, 1], 3).unwrap();
        for iter in 0..20u64 {
            let planted = plant(&p, 2, 9, iter).unwrap();
            for r in 0..3 {
                let (idx, vals) = planted.indicator.column(r);
                assert_eq!(idx.len(), 2);
                assert!(idx.iter().all(|&v| p.cluster_of(v) == r));
                assert!(vals.iter().all(|&v| v == 1.0));
            }
        }
    }

    #[test]
    fn deterministic_per_iteration_and_cluster() {
        let p = Partition::new(vec![0, 0, 0, 1, 1, 1], 2).unwrap();
        let a = plant(&p, 2, 5, 3).unwrap();
        let b = plant(&p, 2, 5, 3).unwrap();
        let c = plant(&p, 2, 5, 4).unwrap();
        assert_eq!(a.indicator, b.indicator);
        assert_ne!(a.indicator, c.indicator);
    }

    #[test]
    fn rejects_degenerate_requests() {
        let p = Partition::new(vec![0, 1], 2).unwrap();
        assert!(plant(&p, 0, 0, 0).is_err());
        let single = Partition::new(vec![0, 0], 1).unwrap();
        assert!(plant(&single, 1, 0, 0).is_err());
    }
}
