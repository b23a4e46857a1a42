//! Graph clustering by incremental reseeding.
//!
//! The core loop alternates three steps on a weighted undirected graph:
//! plant a handful of random seed vertices inside each current cluster, grow
//! the seeds by random-walk propagation until their scores cover the graph,
//! and harvest a new partition by assigning each vertex to its highest
//! score. The number of seeds rises every round, so early rounds explore
//! and late rounds lock in. A multigrid variant coarsens the graph first,
//! clusters the small core, and refines back up the hierarchy.
//!
//! ```
//! use reseed::{cluster, graph, eval};
//!
//! // two dense blocks joined by a single edge
//! let mut edges = vec![(0, 5, 1.0)];
//! for b in [0, 5] {
//!     for i in 0..5 {
//!         for j in (i + 1)..5 {
//!             edges.push((b + i, b + j, 1.0));
//!         }
//!     }
//! }
//! let g = graph::SparseGraph::from_undirected_edges(10, edges)?;
//! let truth = graph::GroundTruth::from_labels(vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1])?;
//!
//! let params = cluster::RunParams {
//!     n_clusters: 2,
//!     schedule: cluster::SeedSchedule::from_speed(5.0, 10, 2)?,
//!     grow: cluster::GrowConfig::default(),
//!     stop: cluster::StoppingRule::default(),
//!     seed: 7,
//! };
//! let outcome = cluster::run(&g, &params, Some(&truth))?;
//! assert_eq!(eval::purity(&outcome.partition, &truth)?, 1.0);
//! # Ok::<(), reseed::Error>(())
//! ```

pub mod cluster;
mod error;
pub mod eval;
pub mod graph;
pub mod multigrid;
mod rng;

pub use cluster::{
    grow, harvest, plant, GrowConfig, GrowOutcome, GrowVariant, IndicatorMatrix, Partition,
    Planted, RunOutcome, RunParams, SeedSchedule, StoppingRule, Termination,
};
pub use error::{Error, Result};
pub use eval::{purity, ConfusionCounts, RunTrace, TraceRecord};
pub use graph::{
    add_noise_edges, connected_components, generate_sbm, inter_block_fraction, knn_graph,
    load_edge_list, load_matrix_market, FeatureMatrix, GroundTruth, SbmParams, SparseGraph,
};
pub use multigrid::{
    build_hierarchy, coarsen_once, make_schedule, Hierarchy, MultigridOutcome, MultigridParams,
    RefineSchedule, Refinement, SeedIncrement,
};

#[cfg(doctest)]
mod guide;
