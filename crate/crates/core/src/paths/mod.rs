//! Exact and hop-bounded shortest paths, plus the greedy spanner.

mod dijkstra;
mod greedy;
mod hop_bounded;

pub use dijkstra::{apsp_exact, shortest_path_tree, DistanceMatrix, ShortestPathTree};
pub use greedy::greedy_spanner;
pub use hop_bounded::{
    apsp_hop_bounded, hop_bounded_tree, min_hops, ArcOrigin, HopBoundedPaths, HopBoundedTree,
    PathArc,
};
