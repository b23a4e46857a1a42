//! Greedy pairwise coarsening: visit vertices in a seeded random order,
//! merge each unmarked vertex with its heaviest unmarked neighbor, and sum
//! the weights between the resulting groups.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::SparseGraph;
use crate::rng::{stream, STREAM_COARSEN};

// A coarsening pass that shrinks the graph by less than this factor counts
// as stalled; graphs with many forced singletons would otherwise crawl.
const MIN_SHRINK: f64 = 0.05;

/// Merge matched pairs once. Returns the coarse graph and the map from each
/// fine vertex to its coarse vertex. Groups have size 1 or 2; coarse vertex
/// ids follow group creation order, so the result is deterministic for a
/// given seed.
pub fn coarsen_once(g: &SparseGraph, seed: u64) -> Result<(SparseGraph, Vec<usize>)> {
    if g.n_vertices() < 2 {
        return Err(Error::invalid("coarsening needs at least 2 vertices"));
    }
    let mut order: Vec<usize> = (0..g.n_vertices()).collect();
    order.shuffle(&mut stream(seed, &[STREAM_COARSEN]));
    Ok(coarsen_in_order(g, &order))
}

/// Deterministic matching pass over an explicit visit order.
pub(crate) fn coarsen_in_order(g: &SparseGraph, order: &[usize]) -> (SparseGraph, Vec<usize>) {
    let n = g.n_vertices();
    debug_assert_eq!(order.len(), n);
    let mut parent = vec![usize::MAX; n];
    let mut n_coarse = 0usize;
    for &u in order {
        if parent[u] != usize::MAX {
            continue;
        }
        // heaviest unmarked neighbor, ties to the lowest index
        let mut best: Option<(f64, usize)> = None;
        for (v, w) in g.neighbors(u) {
            if parent[v] != usize::MAX {
                continue;
            }
            let better = match best {
                None => true,
                Some((bw, bv)) => w > bw || (w == bw && v < bv),
            };
            if better {
                best = Some((w, v));
            }
        }
        parent[u] = n_coarse;
        if let Some((_, v)) = best {
            parent[v] = n_coarse;
        }
        n_coarse += 1;
    }

    // Coarse weights: sum the fine weights joining each pair of groups;
    // edges inside a group disappear.
    let mut cross: Vec<(usize, usize, f64)> = Vec::new();
    for (u, v, w) in g.edges() {
        let (cu, cv) = (parent[u], parent[v]);
        if cu != cv {
            cross.push((cu.min(cv), cu.max(cv), w));
        }
    }
    cross.sort_by_key(|&(a, b, _)| (a, b));
    let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(cross.len());
    for (a, b, w) in cross {
        match merged.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += w,
            _ => merged.push((a, b, w)),
        }
    }
    (SparseGraph::from_canonical_edges(n_coarse, &merged), parent)
}

/// Coarsening ladder from the original graph down to at most `target`
/// vertices. `graphs[0]` is the coarsest level and the last entry is the
/// original; `parent_maps[l]` sends vertices of `graphs[l + 1]` to their
/// representatives in `graphs[l]`.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    graphs: Vec<SparseGraph>,
    parent_maps: Vec<Vec<usize>>,
    stalled: bool,
}

/// Coarsen repeatedly until the graph has at most `target` vertices or a
/// pass stops making progress (flagged, not fatal).
pub fn build_hierarchy(g: &SparseGraph, target: usize, seed: u64) -> Result<Hierarchy> {
    if target < 2 {
        return Err(Error::invalid("coarsest size target must be at least 2"));
    }
    // built finest-first, then reversed
    let mut graphs = vec![g.clone()];
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut stalled = false;
    while graphs.last().unwrap().n_vertices() > target {
        let fine = graphs.last().unwrap();
        let level_seed = crate::rng::derive(seed, &[STREAM_COARSEN, graphs.len() as u64]);
        let (coarse, parent) = coarsen_once(fine, level_seed)?;
        let (fine_n, coarse_n) = (fine.n_vertices(), coarse.n_vertices());
        if coarse_n == fine_n {
            stalled = true;
            break;
        }
        let slow = (fine_n - coarse_n) as f64 / fine_n as f64 + 1e-12 < MIN_SHRINK;
        graphs.push(coarse);
        maps.push(parent);
        if slow && graphs.last().unwrap().n_vertices() > target {
            stalled = true;
            break;
        }
    }
    graphs.reverse();
    maps.reverse();
    Ok(Hierarchy {
        graphs,
        parent_maps: maps,
        stalled,
    })
}

impl Hierarchy {
    pub fn n_levels(&self) -> usize {
        self.graphs.len()
    }

    pub fn graph(&self, level: usize) -> &SparseGraph {
        &self.graphs[level]
    }

    pub fn coarsest(&self) -> &SparseGraph {
        &self.graphs[0]
    }

    pub fn finest(&self) -> &SparseGraph {
        self.graphs.last().unwrap()
    }

    /// Map from vertices of `graphs[level + 1]` to `graphs[level]`.
    pub fn parent_map(&self, level: usize) -> &[usize] {
        &self.parent_maps[level]
    }

    pub fn stalled(&self) -> bool {
        self.stalled
    }

    /// Level sizes from finest to coarsest (strictly decreasing unless a
    /// stalled pass left a slow tail).
    pub fn sizes_finest_first(&self) -> Vec<usize> {
        self.graphs.iter().rev().map(|g| g.n_vertices()).collect()
    }

    /// For each finest-level vertex, its representative at `level`.
    pub fn ancestor_of_finest(&self, level: usize) -> Vec<usize> {
        let finest = self.n_levels() - 1;
        let mut anc: Vec<usize> = (0..self.graphs[finest].n_vertices()).collect();
        for l in (level..finest).rev() {
            for a in anc.iter_mut() {
                *a = self.parent_maps[l][*a];
            }
        }
        anc
    }
}
