//! Uniform noise-edge perturbation: add a fixed number of unit-weight edges
//! sampled without replacement from the pairs not already joined.

use rand::Rng;

use super::SparseGraph;
use crate::error::{Error, Result};
use crate::rng::{stream, STREAM_NOISE};

// Above this many vertex pairs, rejection sampling replaces explicit
// complement enumeration.
const ENUMERATION_LIMIT: usize = 4_000_000;

/// Add `round(fraction * n_edges)` noise edges of weight 1.0, sampled
/// uniformly without replacement from the non-adjacent, non-loop vertex
/// pairs. Deterministic for a given seed.
pub fn add_noise_edges(g: &SparseGraph, fraction: f64, seed: u64) -> Result<SparseGraph> {
    if !fraction.is_finite() || fraction < 0.0 {
        return Err(Error::invalid(format!(
            "noise fraction must be nonnegative, got {fraction}"
        )));
    }
    let n = g.n_vertices();
    let existing = g.n_edges();
    let count = (fraction * existing as f64).round() as usize;
    if count == 0 {
        return Ok(g.clone());
    }
    let total_pairs = n * (n - 1) / 2;
    let complement = total_pairs - existing;
    if count > complement {
        return Err(Error::invalid(format!(
            "cannot add {count} noise edges: only {complement} unused vertex pairs exist"
        )));
    }

    let mut rng = stream(seed, &[STREAM_NOISE]);
    let new_edges: Vec<(usize, usize)> = if total_pairs <= ENUMERATION_LIMIT {
        // Enumerate the complement and take a uniform sample of positions.
        let mut free: Vec<(usize, usize)> = Vec::with_capacity(complement);
        for u in 0..n {
            let (targets, _) = g.row(u);
            let mut t = targets.iter().copied().filter(|&v| v > u).peekable();
            for v in (u + 1)..n {
                if t.peek() == Some(&v) {
                    t.next();
                } else {
                    free.push((u, v));
                }
            }
        }
        debug_assert_eq!(free.len(), complement);
        rand::seq::index::sample(&mut rng, free.len(), count)
            .into_iter()
            .map(|idx| free[idx])
            .collect()
    } else {
        // Sparse regime: rejection sampling against existing + chosen edges.
        let mut chosen = std::collections::HashSet::with_capacity(count * 2);
        let mut picked = Vec::with_capacity(count);
        while picked.len() < count {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let pair = (u.min(v), u.max(v));
            if g.has_edge(pair.0, pair.1) || !chosen.insert(pair) {
                continue;
            }
            picked.push(pair);
        }
        picked
    };

    let mut edges: Vec<(usize, usize, f64)> = g.edges().collect();
    edges.extend(new_edges.into_iter().map(|(u, v)| (u, v, 1.0)));
    edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
    Ok(SparseGraph::from_canonical_edges(n, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> SparseGraph {
        SparseGraph::from_undirected_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1.0))).unwrap()
    }

    #[test]
    fn zero_fraction_returns_the_graph_unchanged() {
        let g = ring(12);
        let out = add_noise_edges(&g, 0.0, 3).unwrap();
        assert_eq!(out.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn complete_graph_has_no_room() {
        let g = SparseGraph::from_undirected_edges(
            3,
            [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)],
        )
        .unwrap();
        let err = add_noise_edges(&g, 0.5, 0).unwrap_err();
        assert!(err.to_string().contains("unused vertex pairs"));
    }

    #[test]
    fn adds_exactly_the_rounded_count_disjoint_from_existing() {
        let g = ring(40);
        for fraction in [0.25, 0.5, 1.0, 2.0] {
            let out = add_noise_edges(&g, fraction, 7).unwrap();
            let expect = (fraction * g.n_edges() as f64).round() as usize;
            assert_eq!(out.n_edges(), g.n_edges() + expect);
            for (u, v, w) in g.edges() {
                assert_eq!(out.edge_weight(u, v), Some(w));
            }
            let added: Vec<_> = out
                .edges()
                .filter(|&(u, v, _)| !g.has_edge(u, v))
                .collect();
            assert_eq!(added.len(), expect);
            assert!(added.iter().all(|&(_, _, w)| w == 1.0));
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let g = ring(30);
        let a = add_noise_edges(&g, 1.0, 9).unwrap();
        let b = add_noise_edges(&g, 1.0, 9).unwrap();
        let c = add_noise_edges(&g, 1.0, 10).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        assert_ne!(a.edges().collect::<Vec<_>>(), c.edges().collect::<Vec<_>>());
    }
}
