//! Graph, coloring, fairlet and clustering primitives shared by every solver.

mod clustering;
mod fairlet;
mod graph;
mod instance;

pub use clustering::{
    clustering_cost, cost_from_pair_counts, is_fair, max_cluster_size_bound, Clustering, Cost,
};
pub use fairlet::FairletVector;
pub use graph::Graph;
pub use instance::ColoredInstance;

/// The nine-vertex two-colored example graph used throughout the tests
/// (0-based: vertex `i` here is vertex `i + 1` in the shipped `fig1.fcc`).
pub fn figure_one() -> ColoredInstance {
    let edges = [
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 3),
        (2, 5),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 7),
        (6, 8),
        (7, 8),
        (8, 9),
    ];
    // colors: 0 = blue, 1 = purple
    let purple = [4, 5, 7];
    let colors = (1..=9).map(|v| usize::from(purple.contains(&v))).collect();
    ColoredInstance::from_edges(9, edges.iter().map(|&(u, v)| (u - 1, v - 1)), colors)
        .expect("figure graph is valid")
}
