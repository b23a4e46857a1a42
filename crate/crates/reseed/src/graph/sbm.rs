//! Planted-partition generator: equal-size blocks, constant degree,
//! controlled mixing.
//!
//! Every vertex receives `avg_degree` edges (floor/ceil when fractional), a
//! `1 - mixing` fraction of them inside its own block, so per-vertex degree
//! and mixing hit their targets exactly up to integer rounding — the
//! degenerate case of the usual community-detection benchmarks with equal
//! community sizes and constant degree. Edges are realized by random stub
//! pairing with local swap repairs to keep the graph simple.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use super::{GroundTruth, SparseGraph};
use crate::error::{Error, Result};
use crate::rng::{stream, STREAM_SBM};

#[derive(Clone, Copy, Debug)]
pub struct SbmParams {
    pub n_per_block: usize,
    pub n_blocks: usize,
    /// Target degree of every vertex; fractional values round per vertex.
    pub avg_degree: f64,
    /// Fraction of each vertex's edges that leave its block, in [0, 1).
    pub mixing: f64,
}

impl SbmParams {
    fn validate(&self) -> Result<()> {
        let n = self.n_per_block;
        let b = self.n_blocks;
        if n * b < 2 {
            return Err(Error::invalid("graph must have at least 2 vertices"));
        }
        if !(0.0..1.0).contains(&self.mixing) {
            return Err(Error::invalid(format!(
                "mixing must lie in [0, 1), got {}",
                self.mixing
            )));
        }
        if !self.avg_degree.is_finite() || self.avg_degree <= 0.0 {
            return Err(Error::invalid("avg_degree must be positive"));
        }
        if self.avg_degree >= n as f64 {
            return Err(Error::invalid(format!(
                "avg_degree {} must be smaller than the block size {n}",
                self.avg_degree
            )));
        }
        let intra_degree = (1.0 - self.mixing) * self.avg_degree;
        if intra_degree.ceil() as usize > n.saturating_sub(1) {
            return Err(Error::invalid(format!(
                "required intra-block degree {intra_degree:.2} exceeds block size {n}"
            )));
        }
        let inter_degree = self.mixing * self.avg_degree;
        if b == 1 && inter_degree > 0.0 {
            return Err(Error::invalid(
                "mixing must be 0 when there is a single block",
            ));
        }
        if inter_degree.ceil() as usize > n * b.saturating_sub(1) {
            return Err(Error::invalid(format!(
                "required inter-block degree {inter_degree:.2} exceeds available vertices"
            )));
        }
        Ok(())
    }
}

/// Generate a graph and its block labels. Deterministic for a given seed.
pub fn generate_sbm(params: &SbmParams, seed: u64) -> Result<(SparseGraph, GroundTruth)> {
    params.validate()?;
    let n = params.n_per_block;
    let b = params.n_blocks;
    let total = n * b;
    let mut rng = stream(seed, &[STREAM_SBM]);

    // Per-vertex degree: floor(avg) everywhere, ceil for a random subset
    // sized to hit the average, nudged so the total stub count is even.
    let base = params.avg_degree.floor() as usize;
    let mut n_ceil = ((params.avg_degree - base as f64) * total as f64).round() as usize;
    if (base * total + n_ceil) % 2 == 1 {
        n_ceil = if n_ceil + 1 < total { n_ceil + 1 } else { n_ceil - 1 };
    }
    let mut degree = vec![base; total];
    let mut order: Vec<usize> = (0..total).collect();
    order.shuffle(&mut rng);
    for &v in order.iter().take(n_ceil) {
        degree[v] += 1;
    }

    // Per-vertex intra-block degree: floor of the target everywhere, ceil
    // for a random subset sized to hit the block total, then one swap to
    // make each block's stub count even.
    let mut intra = vec![0usize; total];
    for block in 0..b {
        let members: Vec<usize> = (block * n..(block + 1) * n).collect();
        let target: f64 = members.iter().map(|&v| (1.0 - params.mixing) * degree[v] as f64).sum();
        let floors: usize = members
            .iter()
            .map(|&v| ((1.0 - params.mixing) * degree[v] as f64).floor() as usize)
            .sum();
        let mut bumps = (target - floors as f64).round() as usize;
        for &v in &members {
            intra[v] = ((1.0 - params.mixing) * degree[v] as f64).floor() as usize;
        }
        let mut shuffled = members.clone();
        shuffled.shuffle(&mut rng);
        let mut sum: usize = members.iter().map(|&v| intra[v]).sum();
        for &v in &shuffled {
            if bumps == 0 {
                break;
            }
            if intra[v] < degree[v].min(n - 1) {
                intra[v] += 1;
                sum += 1;
                bumps -= 1;
            }
        }
        if sum % 2 == 1 {
            // parity fix: prefer dropping a stub (moves it to the
            // inter-block side and keeps the vertex degree intact)
            let fixed = shuffled.iter().find(|&&v| intra[v] > 0).copied();
            match fixed {
                Some(v) => intra[v] -= 1,
                None => {
                    let v = *shuffled
                        .iter()
                        .find(|&&v| intra[v] < degree[v].min(n - 1))
                        .expect("block with odd stub sum has a bumpable vertex");
                    intra[v] += 1;
                }
            }
        }
    }

    let block_of = |v: usize| v / n;
    let mut edges: HashSet<(usize, usize)> = HashSet::with_capacity(total * (base + 1));

    // Intra-block edges: pair stubs within each block.
    for block in 0..b {
        let mut stubs: Vec<usize> = Vec::new();
        for v in block * n..(block + 1) * n {
            stubs.extend(std::iter::repeat(v).take(intra[v]));
        }
        let mut pair_rng = stream(seed, &[STREAM_SBM, 1, block as u64]);
        pair_stubs(stubs, &mut pair_rng, &mut edges, |a, b| a != b);
    }

    // Inter-block edges: pair the remaining stubs across blocks.
    let mut stubs: Vec<usize> = Vec::new();
    for v in 0..total {
        stubs.extend(std::iter::repeat(v).take(degree[v] - intra[v]));
    }
    if stubs.len() % 2 == 1 {
        // global parity: drop one random inter stub
        let k = rng.gen_range(0..stubs.len());
        stubs.swap_remove(k);
    }
    let mut pair_rng = stream(seed, &[STREAM_SBM, 2]);
    pair_stubs(stubs, &mut pair_rng, &mut edges, |a, c| block_of(a) != block_of(c));

    let mut canonical: Vec<(usize, usize, f64)> =
        edges.into_iter().map(|(u, v)| (u, v, 1.0)).collect();
    canonical.sort_unstable_by_key(|&(u, v, _)| (u, v));
    let graph = SparseGraph::from_canonical_edges(total, &canonical);
    let labels = (0..total).map(block_of).collect();
    Ok((graph, GroundTruth::from_labels(labels)?))
}

/// Shuffle stubs, pair them off, then repair invalid pairs (failing the
/// `valid` predicate, or duplicating an edge) by random swaps. Residual bad
/// pairs after the sweep cap are dropped, trading an edge or two of degree
/// for a guaranteed simple graph.
fn pair_stubs(
    mut stubs: Vec<usize>,
    rng: &mut ChaCha8Rng,
    edges: &mut HashSet<(usize, usize)>,
    valid: impl Fn(usize, usize) -> bool,
) -> usize {
    if stubs.len() < 2 {
        return 0;
    }
    stubs.shuffle(rng);
    if stubs.len() % 2 == 1 {
        stubs.pop();
    }
    let n_pairs = stubs.len() / 2;
    let canon = |a: usize, b: usize| (a.min(b), a.max(b));

    let mut added = 0usize;
    for sweep in 0..300 {
        let mut pending: Vec<usize> = Vec::new(); // indices of bad pairs
        {
            let mut staged: HashSet<(usize, usize)> = HashSet::with_capacity(n_pairs);
            for i in 0..n_pairs {
                let (a, b) = (stubs[2 * i], stubs[2 * i + 1]);
                let key = canon(a, b);
                if !valid(a, b) || edges.contains(&key) || !staged.insert(key) {
                    pending.push(i);
                }
            }
        }
        if pending.is_empty() {
            break;
        }
        if sweep == 299 {
            // give up on the stragglers: drop them by pairing them with
            // themselves, filtered below
            for &i in &pending {
                let v = stubs[2 * i];
                stubs[2 * i + 1] = v;
            }
            break;
        }
        for &i in &pending {
            let j = rng.gen_range(0..n_pairs);
            stubs.swap(2 * i + 1, 2 * j + 1);
        }
    }

    for i in 0..n_pairs {
        let (a, b) = (stubs[2 * i], stubs[2 * i + 1]);
        if valid(a, b) {
            let key = canon(a, b);
            if edges.insert(key) {
                added += 1;
            }
        }
    }
    added
}

/// Fraction of edges joining vertices with different labels.
pub fn inter_block_fraction(g: &SparseGraph, gt: &GroundTruth) -> f64 {
    let labels = gt.labels();
    let mut inter = 0usize;
    let mut total = 0usize;
    for (u, v, _) in g.edges() {
        total += 1;
        if labels[u] != labels[v] {
            inter += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        inter as f64 / total as f64
    }
}
