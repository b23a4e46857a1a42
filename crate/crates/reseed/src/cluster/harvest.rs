//! Thresholding: assign each vertex to the cluster whose column scores it
//! highest, ties going to the lowest cluster index so the result is a true
//! partition.

use super::indicator::IndicatorMatrix;
use super::partition::Partition;
use crate::error::{Error, Result};

/// Argmax over columns per vertex. Every vertex must carry at least one
/// nonzero score (guaranteed by growing to row coverage or stronger).
pub fn harvest(f: &IndicatorMatrix) -> Result<Partition> {
    let n = f.n_vertices();
    let r = f.n_columns();
    if r == 0 {
        return Err(Error::invalid("cannot harvest a matrix with no columns"));
    }
    let mut best = vec![0.0f64; n];
    let mut assign = vec![usize::MAX; n];
    for c in 0..r {
        let (indices, values) = f.column(c);
        for (&v, &x) in indices.iter().zip(values) {
            // strict > keeps the lowest column index on ties
            if x > best[v] || assign[v] == usize::MAX {
                best[v] = x;
                assign[v] = c;
            }
        }
    }
    if let Some(uncovered) = assign.iter().position(|&c| c == usize::MAX) {
        return Err(Error::UncoveredVertex(uncovered));
    }
    Partition::new(assign, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_the_largest_score_per_vertex() {
        let f = IndicatorMatrix::from_triples(
            2,
            2,
            [(0, 0, 0.7), (0, 1, 0.3), (1, 0, 0.2), (1, 1, 0.8)],
        )
        .unwrap();
        assert_eq!(harvest(&f).unwrap().assignment(), &[0, 1]);
    }

    #[test]
    fn ties_go_to_the_lowest_cluster() {
        let f = IndicatorMatrix::from_triples(1, 2, [(0, 0, 0.5), (0, 1, 0.5)]).unwrap();
        assert_eq!(harvest(&f).unwrap().assignment(), &[0]);
    }

    #[test]
    fn uncovered_vertex_is_an_error() {
        let f = IndicatorMatrix::from_triples(2, 2, [(0, 0, 1.0)]).unwrap();
        let err = harvest(&f).unwrap_err();
        assert!(matches!(err, Error::UncoveredVertex(1)));
    }
}
