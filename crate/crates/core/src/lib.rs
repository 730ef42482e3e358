//! Steiner tree solver built from optimum-preserving graph reductions and a
//! variable neighborhood descent over Steiner-node insertion and removal
//! moves. The reducer and the solver exchange information while the search
//! runs: every new incumbent tightens the bound-based reductions, and every
//! reduction shrinks the graph the solver works on.

pub mod bench;
pub mod construct;
pub mod exact;
pub mod graph;
pub mod reduce;
pub mod score;
pub mod solve;
pub mod steinlib;
pub mod vnd;

pub use graph::{
    connected_components, dijkstra, minimum_spanning_tree, prune_degree_one, validate_tree, Cost,
    Edge, Graph, GraphError, Instance, NodeId, PathResult, Solution, TreeViolation,
};
