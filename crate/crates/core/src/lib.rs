//! Exact solvers for Fair Correlation Clustering.
//!
//! A colored graph is to be partitioned into clusters whose color counts are
//! integer multiples of the instance's fairlet, minimizing the number of
//! edges between clusters plus non-edges inside clusters.
//!
//! The crate provides
//! - a brute-force [`oracle`],
//! - a vertex-cover parameterized solver ([`solver::vc`]),
//! - tree-decomposition dynamic programs ([`solver::tw`]),
//! - a treedepth reduction followed by an integer program ([`solver::td`], [`bip`]),
//!
//! together with the decompositions these solvers consume ([`decomp`]).
//!
//! Vertices and colors are 0-based indices throughout the API; text formats
//! that use 1-based labels convert at the boundary.

pub mod bip;
pub mod decomp;
mod error;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod partitions;
pub mod solver;

pub use error::{Error, Result};
pub use model::{
    clustering_cost, cost_from_pair_counts, is_fair, max_cluster_size_bound, Clustering,
    ColoredInstance, Cost, FairletVector, Graph,
};

/// Result of an exact solve: the minimum cost and one clustering attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub cost: Cost,
    pub clustering: Clustering,
}
