use crate::graph::{dijkstra_bounded, kruskal, Cost, Edge, GraphError, Instance, NodeId, PathResult};

use super::ReduceError;

/// One shortest-path tree per terminal.
#[derive(Debug, Clone)]
pub struct TerminalDistances {
    terminals: Vec<NodeId>,
    paths: Vec<PathResult>,
}

pub fn terminal_distances(instance: &Instance) -> TerminalDistances {
    let terminals = instance.terminals().to_vec();
    let paths = terminals
        .iter()
        .map(|&t| dijkstra_bounded(instance.graph(), t, None))
        .collect();
    TerminalDistances { terminals, paths }
}

impl TerminalDistances {
    pub fn terminals(&self) -> &[NodeId] {
        &self.terminals
    }

    /// Paths from the terminal at position `index` of [`Self::terminals`].
    pub fn from_index(&self, index: usize) -> &PathResult {
        &self.paths[index]
    }

    pub fn distance(&self, index: usize, v: NodeId) -> Option<Cost> {
        self.paths[index].distance(v)
    }

    /// Largest distance from `v` to any terminal; `None` if some terminal
    /// cannot be reached.
    pub fn max_distance(&self, v: NodeId) -> Option<Cost> {
        self.paths
            .iter()
            .map(|p| p.distance(v))
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmstEdge {
    pub a: NodeId,
    pub b: NodeId,
    pub cost: Cost,
    /// Realizing shortest path in the graph, from `a` to `b`.
    pub path: Vec<NodeId>,
}

/// Minimum spanning tree of the terminal distance graph.
#[derive(Debug, Clone)]
pub struct Tmst {
    pub edges: Vec<TmstEdge>,
    distances: TerminalDistances,
}

impl Tmst {
    /// Most expensive TMST edge; `None` for a single terminal.
    pub fn max_cost(&self) -> Option<Cost> {
        self.edges.iter().map(|e| e.cost).max()
    }

    pub fn cost(&self) -> Cost {
        self.edges.iter().map(|e| e.cost).sum()
    }

    pub fn distances(&self) -> &TerminalDistances {
        &self.distances
    }

    /// `table[i][j]` is the largest TMST edge on the tree path between the
    /// terminals at positions `i` and `j`; zero on the diagonal.
    pub fn bottleneck_table(&self) -> Vec<Vec<Cost>> {
        let terms = self.distances.terminals();
        let k = terms.len();
        let pos = |t: NodeId| terms.binary_search(&t).expect("TMST endpoint is a terminal");
        let mut adj: Vec<Vec<(usize, Cost)>> = vec![Vec::new(); k];
        for e in &self.edges {
            let (i, j) = (pos(e.a), pos(e.b));
            adj[i].push((j, e.cost));
            adj[j].push((i, e.cost));
        }
        let mut table = vec![vec![0; k]; k];
        for (s, row) in table.iter_mut().enumerate() {
            let mut seen = vec![false; k];
            let mut stack = vec![(s, 0)];
            seen[s] = true;
            while let Some((u, worst)) = stack.pop() {
                row[u] = worst;
                for &(v, c) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push((v, worst.max(c)));
                    }
                }
            }
        }
        table
    }
}

/// Builds the TMST from |T| Dijkstra runs; each tree edge carries the path
/// it stands for.
pub fn build_tmst(instance: &Instance) -> Result<Tmst, ReduceError> {
    let distances = terminal_distances(instance);
    let terms = distances.terminals();
    let mut pairs = Vec::with_capacity(terms.len() * terms.len().saturating_sub(1) / 2);
    for (i, &a) in terms.iter().enumerate() {
        for &b in &terms[i + 1..] {
            let d = distances
                .distance(i, b)
                .ok_or(GraphError::Disconnected(a, b))?;
            pairs.push(Edge::new(a, b, d));
        }
    }
    let slots = instance.graph().slots();
    let edges = kruskal(slots, pairs)
        .into_iter()
        .map(|e| {
            let i = terms.binary_search(&e.u).expect("terminal");
            let path = distances
                .from_index(i)
                .path_to(e.v)
                .expect("reachable terminal");
            TmstEdge {
                a: e.u,
                b: e.v,
                cost: e.cost,
                path,
            }
        })
        .collect();
    Ok(Tmst { edges, distances })
}
