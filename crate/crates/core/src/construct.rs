//! Initial solutions from the expanded terminal MST.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{tree_from_subgraph, Edge, Instance, NodeId, Solution};
use crate::reduce::{build_tmst, ReduceError, Tmst};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pruning {
    /// Keep only the edges on expansion paths.
    Edge,
    /// Keep the nodes on expansion paths with every edge among them.
    Vertex,
}

/// TMST with each edge replaced by its shortest path in the graph.
#[derive(Debug, Clone)]
pub struct ExpandedTmst {
    pub tmst: Tmst,
    pub nodes: BTreeSet<NodeId>,
    pub edges: BTreeSet<Edge>,
}

pub fn expand_tmst(instance: &Instance) -> Result<ExpandedTmst, ReduceError> {
    let tmst = build_tmst(instance)?;
    let graph = instance.graph();
    let mut nodes: BTreeSet<NodeId> = instance.terminals().iter().copied().collect();
    let mut edges = BTreeSet::new();
    for te in &tmst.edges {
        nodes.extend(te.path.iter().copied());
        for w in te.path.windows(2) {
            let cost = graph.edge_cost(w[0], w[1]).expect("path edge exists");
            edges.insert(Edge::new(w[0], w[1], cost));
        }
    }
    Ok(ExpandedTmst { tmst, nodes, edges })
}

/// Prunes the graph down to the expanded TMST (by edges or by vertices),
/// takes its MST and strips non-terminal leaves.
pub fn construct(instance: &Instance, pruning: Pruning) -> Result<Solution, ReduceError> {
    let expanded = expand_tmst(instance)?;
    Ok(construct_from(instance, &expanded, pruning))
}

fn construct_from(instance: &Instance, expanded: &ExpandedTmst, pruning: Pruning) -> Solution {
    let is_terminal = |v| instance.is_terminal(v);
    match pruning {
        Pruning::Edge => tree_from_subgraph(
            expanded.nodes.iter().copied(),
            expanded.edges.iter().copied(),
            is_terminal,
        ),
        Pruning::Vertex => {
            let graph = instance.graph();
            let induced = expanded.nodes.iter().flat_map(|&u| {
                graph
                    .neighbors(u)
                    .iter()
                    .filter(move |&&(v, _)| u < v && expanded.nodes.contains(&v))
                    .map(move |&(v, c)| Edge::new(u, v, c))
            });
            tree_from_subgraph(expanded.nodes.iter().copied(), induced, is_terminal)
        }
    }
}

/// The cheaper of the two constructions; edge pruning wins ties.
pub fn initial_solution(instance: &Instance) -> Result<Solution, ReduceError> {
    let expanded = expand_tmst(instance)?;
    let by_edge = construct_from(instance, &expanded, Pruning::Edge);
    let by_vertex = construct_from(instance, &expanded, Pruning::Vertex);
    Ok(if by_vertex.cost() < by_edge.cost() {
        by_vertex
    } else {
        by_edge
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{validate_tree, Graph};

    #[test]
    fn k4star_both_variants_find_the_star() {
        let k = k4star();
        for p in [Pruning::Edge, Pruning::Vertex] {
            let s = construct(&k, p).unwrap();
            assert_eq!(s, star(), "{p:?}");
            validate_tree(&s, &k).unwrap();
        }
        assert_eq!(initial_solution(&k).unwrap().cost(), 3);
    }

    #[test]
    fn path3_takes_the_whole_path() {
        let s = initial_solution(&path3()).unwrap();
        assert_eq!(s.cost(), 2);
        assert_eq!(s.edges().len(), 2);
    }

    #[test]
    fn adjacent_terminals_need_no_steiner_nodes() {
        // triangle of terminals with unit edges plus an expensive hub
        let mut g = Graph::from_edges(5, [(1, 2, 1), (2, 3, 1), (1, 3, 1), (1, 4, 5), (2, 4, 5)]).unwrap();
        g.remove_node(0);
        let inst = Instance::new(g, [1, 2, 3]).unwrap();
        let e = construct(&inst, Pruning::Edge).unwrap();
        let v = construct(&inst, Pruning::Vertex).unwrap();
        assert_eq!(e, v);
        assert_eq!(e.cost(), 2);
        assert!(!e.contains_node(4));
    }

    #[test]
    fn vertex_pruning_can_use_induced_shortcuts() {
        // terminals 1, 3, 5. Shortest paths 1-2-3 and 3-4-5 (cost 4 each);
        // the induced edge 2-4 (cost 1) is not on any path.
        let mut g = Graph::from_edges(
            6,
            [(1, 2, 2), (2, 3, 2), (3, 4, 2), (4, 5, 2), (2, 4, 1), (1, 5, 9)],
        )
        .unwrap();
        g.remove_node(0);
        let inst = Instance::new(g, [1, 3, 5]).unwrap();
        let e = construct(&inst, Pruning::Edge).unwrap();
        let v = construct(&inst, Pruning::Vertex).unwrap();
        assert_eq!(e.cost(), 8);
        assert_eq!(v.cost(), 7);
        assert_eq!(initial_solution(&inst).unwrap(), v);
    }

    #[test]
    fn single_terminal() {
        let g = Graph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let inst = Instance::new(g, [2]).unwrap();
        assert_eq!(initial_solution(&inst).unwrap(), Solution::single(2));
    }
}
