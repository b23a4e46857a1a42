//! Coarsen, cluster, refine: collapse the graph to a small core, cluster it
//! there, then walk the clustering back up the hierarchy, optionally
//! polishing each level with a short reseeding run.

mod coarsen;
mod schedule;

pub use coarsen::{build_hierarchy, coarsen_once, Hierarchy};
pub use schedule::{make_schedule, RefineSchedule};

use std::time::Instant;

use crate::cluster::{run_loop, GrowConfig, Partition, PurityProbe, SeedMode, SeedSchedule, StoppingRule};
use crate::error::{Error, Result};
use crate::eval::RunTrace;
use crate::graph::{connected_components, GroundTruth, SparseGraph};
use crate::rng::{derive, stream, STREAM_INIT, STREAM_LEVEL};

/// How the coarse clustering is carried back to the original graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refinement {
    /// Run the reseeding loop at every level, seeded from the level above.
    Reseeding,
    /// Projection only: each vertex takes its coarse representative's label.
    Trivial,
}

/// Per-round seed increment, resolved against each graph's vertex count.
#[derive(Clone, Copy, Debug)]
pub enum SeedIncrement {
    /// The standard heuristic `speed * 1e-4 * N / R`.
    Speed(f64),
    /// An explicit increment.
    DeltaM(f64),
}

impl SeedIncrement {
    pub fn schedule(&self, n_vertices: usize, n_clusters: usize) -> Result<SeedSchedule> {
        match *self {
            SeedIncrement::Speed(s) => SeedSchedule::from_speed(s, n_vertices, n_clusters),
            SeedIncrement::DeltaM(d) => SeedSchedule::from_delta(d),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MultigridParams {
    pub n_clusters: usize,
    /// Target size of the coarsest graph.
    pub coarse_target: usize,
    /// Iterations of the reseeding loop at the coarsest level.
    pub coarse_iterations: usize,
    pub increment: SeedIncrement,
    pub grow: GrowConfig,
    pub refinement: Refinement,
    pub seed: u64,
}

impl Default for MultigridParams {
    fn default() -> Self {
        Self {
            n_clusters: 2,
            coarse_target: 500,
            coarse_iterations: 250,
            increment: SeedIncrement::Speed(5.0),
            grow: GrowConfig::default(),
            refinement: Refinement::Reseeding,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MultigridOutcome {
    pub partition: Partition,
    pub trace: RunTrace,
    /// Level sizes from the original graph down to the coarsest.
    pub level_sizes: Vec<usize>,
    /// Coarsening stopped short of the target.
    pub stalled: bool,
    /// Seeds per cluster at the final coarse-level planting; anchors the
    /// refinement schedule.
    pub coarse_seeds: usize,
    pub total_grow_steps: usize,
    /// The refinement schedule, when more than one level exists.
    pub schedule: Option<RefineSchedule>,
}

/// Cluster `g` through a coarsening hierarchy. With a single level this is
/// exactly the flat loop capped at `coarse_iterations`.
pub fn run(
    g: &SparseGraph,
    params: &MultigridParams,
    ground_truth: Option<&GroundTruth>,
) -> Result<MultigridOutcome> {
    let n = g.n_vertices();
    let r = params.n_clusters;
    if r < 2 {
        return Err(Error::invalid("clustering needs at least 2 clusters"));
    }
    if r > n {
        return Err(Error::invalid(format!(
            "cannot split {n} vertices into {r} clusters"
        )));
    }
    params.grow.validate()?;
    if params.coarse_iterations < 2 {
        return Err(Error::invalid("coarse_iterations must be at least 2"));
    }
    if let Some(gt) = ground_truth {
        if gt.len() != n {
            return Err(Error::invalid(format!(
                "ground truth covers {} vertices but the graph has {n}",
                gt.len()
            )));
        }
    }
    let components = connected_components(g);
    if components.n_components != 1 {
        return Err(Error::Disconnected(components.n_components));
    }

    // the coarsest graph must still hold R clusters
    let target = params.coarse_target.max(r);
    let hierarchy = build_hierarchy(g, target, params.seed)?;
    let levels = hierarchy.n_levels();
    let start = Instant::now();

    // Base clustering at the coarsest level: the plain loop for a fixed
    // number of iterations.
    let coarsest = hierarchy.coarsest();
    let coarse_schedule = params.increment.schedule(coarsest.n_vertices(), r)?;
    let ancestors: Vec<Vec<usize>> = (0..levels)
        .map(|l| hierarchy.ancestor_of_finest(l))
        .collect();
    let probe = |level: usize| match ground_truth {
        None => PurityProbe::None,
        Some(gt) => PurityProbe::Projected {
            gt,
            ancestor: &ancestors[level],
        },
    };
    let initial = Partition::random(
        coarsest.n_vertices(),
        r,
        &mut stream(params.seed, &[STREAM_INIT]),
    );
    let coarse_out = run_loop(
        coarsest,
        initial,
        SeedMode::Schedule(coarse_schedule),
        &params.grow,
        StoppingRule {
            max_iterations: params.coarse_iterations,
            stable_iterations: None,
        },
        params.seed,
        probe(0),
        start,
        0,
    )?;

    let mut partition = coarse_out.partition;
    let mut records = coarse_out.trace.records().to_vec();
    let mut total_grow_steps = coarse_out.total_grow_steps;
    let coarse_seeds = coarse_out.final_seeds;

    let schedule = if levels > 1 {
        Some(make_schedule(
            n,
            coarsest.n_vertices(),
            levels,
            params.coarse_iterations,
            coarse_seeds,
        )?)
    } else {
        None
    };

    for level in 1..levels {
        // project: each finer vertex takes its representative's cluster
        let parent = hierarchy.parent_map(level - 1);
        let projected: Vec<usize> = parent.iter().map(|&c| partition.cluster_of(c)).collect();
        partition = Partition::new(projected, r)?;

        if params.refinement == Refinement::Trivial {
            continue;
        }
        let sched = schedule.as_ref().unwrap();
        let level_out = run_loop(
            hierarchy.graph(level),
            partition,
            SeedMode::Fixed(sched.seeds_at(level)),
            &params.grow,
            StoppingRule {
                max_iterations: sched.iterations_at(level),
                stable_iterations: None,
            },
            derive(params.seed, &[STREAM_LEVEL, level as u64]),
            probe(level),
            start,
            records.len(),
        )?;
        partition = level_out.partition;
        total_grow_steps += level_out.total_grow_steps;
        records.extend_from_slice(level_out.trace.records());
    }

    Ok(MultigridOutcome {
        partition,
        trace: RunTrace::from_records(records)?,
        level_sizes: hierarchy.sizes_finest_first(),
        stalled: hierarchy.stalled(),
        coarse_seeds,
        total_grow_steps,
        schedule,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{self, RunParams};
    use crate::eval;

    fn two_cliques(k: usize) -> (SparseGraph, GroundTruth) {
        let mut edges = Vec::new();
        for base in [0, k] {
            for i in 0..k {
                for j in (i + 1)..k {
                    edges.push((base + i, base + j, 1.0));
                }
            }
        }
        edges.push((0, k, 1.0));
        let g = SparseGraph::from_undirected_edges(2 * k, edges).unwrap();
        let gt = GroundTruth::from_labels(
            (0..2 * k).map(|v| if v < k { 0 } else { 1 }).collect(),
        )
        .unwrap();
        (g, gt)
    }

    #[test]
    fn single_level_matches_the_flat_loop_exactly() {
        let (g, _) = two_cliques(10); // 20 vertices, under the coarse target
        let params = MultigridParams {
            n_clusters: 2,
            coarse_target: 64,
            coarse_iterations: 40,
            refinement: Refinement::Trivial,
            seed: 5,
            ..Default::default()
        };
        let ml = run(&g, &params, None).unwrap();
        assert_eq!(ml.level_sizes, vec![20]);
        assert!(ml.schedule.is_none());

        let flat = cluster::run(
            &g,
            &RunParams {
                n_clusters: 2,
                schedule: SeedSchedule::from_speed(5.0, 20, 2).unwrap(),
                grow: GrowConfig::default(),
                stop: StoppingRule {
                    max_iterations: 40,
                    stable_iterations: None,
                },
                seed: 5,
            },
            None,
        )
        .unwrap();
        assert_eq!(ml.partition, flat.partition);
        assert_eq!(ml.total_grow_steps, flat.total_grow_steps);
    }

    #[test]
    fn recovers_cliques_through_the_hierarchy() {
        let (g, gt) = two_cliques(200);
        let params = MultigridParams {
            n_clusters: 2,
            coarse_target: 50,
            coarse_iterations: 50,
            seed: 0,
            ..Default::default()
        };
        let mut exact = 0;
        for seed in 0..10 {
            let out = run(&g, &MultigridParams { seed, ..params }, Some(&gt)).unwrap();
            assert!(out.level_sizes.windows(2).all(|w| w[1] < w[0]));
            if eval::purity(&out.partition, &gt).unwrap() == 1.0 {
                exact += 1;
            }
        }
        assert!(exact >= 9, "only {exact}/10 multigrid runs were exact");
    }

    #[test]
    fn trivial_refinement_projects_without_extra_iterations() {
        let (g, gt) = two_cliques(64);
        let params = MultigridParams {
            n_clusters: 2,
            coarse_target: 16,
            coarse_iterations: 30,
            refinement: Refinement::Trivial,
            seed: 3,
            ..Default::default()
        };
        let out = run(&g, &params, Some(&gt)).unwrap();
        // trace only covers the coarse run
        assert_eq!(out.trace.len(), 30);
        assert_eq!(out.partition.len(), 128);
        // projection keeps whole coarse groups together
        let reseeded = run(
            &g,
            &MultigridParams {
                refinement: Refinement::Reseeding,
                ..params
            },
            Some(&gt),
        )
        .unwrap();
        assert!(reseeded.trace.len() > out.trace.len());
        assert!(reseeded.total_grow_steps >= out.total_grow_steps);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let (g, gt) = two_cliques(80);
        let params = MultigridParams {
            n_clusters: 2,
            coarse_target: 20,
            coarse_iterations: 24,
            seed: 11,
            ..Default::default()
        };
        let a = run(&g, &params, Some(&gt)).unwrap();
        let b = run(&g, &params, Some(&gt)).unwrap();
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.total_grow_steps, b.total_grow_steps);
        assert_eq!(a.level_sizes, b.level_sizes);
    }

    #[test]
    fn projection_preserves_partition_validity() {
        let (g, _) = two_cliques(96);
        let params = MultigridParams {
            n_clusters: 3,
            coarse_target: 24,
            coarse_iterations: 20,
            seed: 2,
            ..Default::default()
        };
        let out = run(&g, &params, None).unwrap();
        assert_eq!(out.partition.len(), g.n_vertices());
        assert!(out.partition.assignment().iter().all(|&c| c < 3));
    }
}
