//! Graph representation and the shared shortest-path / spanning-tree machinery.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense node identifier. SteinLib ids are used verbatim, so slot 0 is
/// usually a tombstone in parsed instances.
pub type NodeId = usize;

/// Exact integral edge weight.
pub type Cost = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {0} does not exist or has been removed")]
    UnknownNode(NodeId),
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    #[error("instance needs at least one terminal")]
    NoTerminals,
    #[error("terminals {0} and {1} are not connected")]
    Disconnected(NodeId, NodeId),
}

/// Undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub cost: Cost,
}

impl Edge {
    pub fn new(a: NodeId, b: NodeId, cost: Cost) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, cost }
    }

    pub fn key(&self) -> (NodeId, NodeId) {
        (self.u, self.v)
    }

    pub fn other(&self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Kruskal order: cost, then smaller endpoint, then larger endpoint.
    pub fn mst_order(&self) -> (Cost, NodeId, NodeId) {
        (self.cost, self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {})", self.u, self.v, self.cost)
    }
}

/// Undirected simple graph with tombstoned node removal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    alive: Vec<bool>,
    // neighbour lists kept sorted by neighbour id
    adj: Vec<Vec<(NodeId, Cost)>>,
    live_nodes: usize,
    edge_count: usize,
}

impl Graph {
    /// A graph with node slots `0..slots`, all live, no edges.
    pub fn new(slots: usize) -> Self {
        Graph {
            alive: vec![true; slots],
            adj: vec![Vec::new(); slots],
            live_nodes: slots,
            edge_count: 0,
        }
    }

    pub fn from_edges(
        slots: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId, Cost)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(slots);
        for (a, b, c) in edges {
            g.add_edge(a, b, c)?;
        }
        Ok(g)
    }

    pub fn slots(&self) -> usize {
        self.alive.len()
    }

    pub fn node_count(&self) -> usize {
        self.live_nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_live(&self, v: NodeId) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    fn check(&self, v: NodeId) -> Result<(), GraphError> {
        if self.is_live(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(v))
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(v, &a)| a.then_some(v))
    }

    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, Cost)] {
        self.adj.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors(v).len()
    }

    pub fn edge_cost(&self, a: NodeId, b: NodeId) -> Option<Cost> {
        let list = self.adj.get(a)?;
        list.binary_search_by_key(&b, |&(n, _)| n)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.edge_cost(a, b).is_some()
    }

    /// Every edge once, ordered by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, c)| Edge { u, v, cost: c })
        })
    }

    pub fn total_weight(&self) -> Cost {
        self.edges().map(|e| e.cost).sum()
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId, cost: Cost) -> Result<(), GraphError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.has_edge(a, b) {
            let e = Edge::new(a, b, cost);
            return Err(GraphError::DuplicateEdge(e.u, e.v));
        }
        insert_sorted(&mut self.adj[a], b, cost);
        insert_sorted(&mut self.adj[b], a, cost);
        self.edge_count += 1;
        Ok(())
    }

    /// Adds the edge, or lowers the cost of an existing parallel edge.
    pub fn add_or_min_edge(&mut self, a: NodeId, b: NodeId, cost: Cost) -> Result<(), GraphError> {
        match self.edge_cost(a, b) {
            Some(old) if old <= cost => Ok(()),
            Some(_) => {
                self.remove_edge(a, b);
                self.add_edge(a, b, cost)
            }
            None => self.add_edge(a, b, cost),
        }
    }

    pub fn remove_edge(&mut self, a: NodeId, b: NodeId) -> Option<Cost> {
        let cost = self.edge_cost(a, b)?;
        self.adj[a].retain(|&(n, _)| n != b);
        self.adj[b].retain(|&(n, _)| n != a);
        self.edge_count -= 1;
        Some(cost)
    }

    /// Tombstones `v` and returns the incident edges that went with it.
    pub fn remove_node(&mut self, v: NodeId) -> Vec<Edge> {
        if !self.is_live(v) {
            return Vec::new();
        }
        let incident = std::mem::take(&mut self.adj[v]);
        for &(n, _) in &incident {
            self.adj[n].retain(|&(m, _)| m != v);
        }
        self.edge_count -= incident.len();
        self.alive[v] = false;
        self.live_nodes -= 1;
        incident
            .into_iter()
            .map(|(n, c)| Edge::new(v, n, c))
            .collect()
    }
}

fn insert_sorted(list: &mut Vec<(NodeId, Cost)>, n: NodeId, c: Cost) {
    let pos = list.partition_point(|&(m, _)| m < n);
    list.insert(pos, (n, c));
}

/// A Steiner problem: graph plus required terminal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    terminals: Vec<NodeId>,
    terminal_flag: Vec<bool>,
}

impl Instance {
    pub fn new(graph: Graph, terminals: impl IntoIterator<Item = NodeId>) -> Result<Self, GraphError> {
        let set: BTreeSet<NodeId> = terminals.into_iter().collect();
        if set.is_empty() {
            return Err(GraphError::NoTerminals);
        }
        let mut terminal_flag = vec![false; graph.slots()];
        for &t in &set {
            graph.check(t)?;
            terminal_flag[t] = true;
        }
        Ok(Instance {
            graph,
            terminals: set.into_iter().collect(),
            terminal_flag,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Mutable access for the reducer. Terminals must stay live.
    pub(crate) fn graph_mut(&mut self) -> &mut Graph {
        &mut self.graph
    }

    /// Sorted ascending.
    pub fn terminals(&self) -> &[NodeId] {
        &self.terminals
    }

    pub fn is_terminal(&self, v: NodeId) -> bool {
        self.terminal_flag.get(v).copied().unwrap_or(false)
    }

    pub fn terminal_flags(&self) -> &[bool] {
        &self.terminal_flag
    }

    /// Errors with the first pair of terminals that cannot reach each other.
    pub fn check_feasible(&self) -> Result<(), GraphError> {
        let root = self.terminals[0];
        let paths = dijkstra(&self.graph, root)?;
        match self.terminals.iter().find(|&&t| paths.distance(t).is_none()) {
            Some(&t) => Err(GraphError::Disconnected(root, t)),
            None => Ok(()),
        }
    }
}

/// A tree subgraph (not necessarily valid; see [`validate_tree`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    nodes: BTreeSet<NodeId>,
    edges: BTreeSet<Edge>,
    cost: Cost,
}

impl Solution {
    /// The nodes are the edge endpoints plus `extra`.
    pub fn from_edges(
        edges: impl IntoIterator<Item = Edge>,
        extra: impl IntoIterator<Item = NodeId>,
    ) -> Self {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let mut nodes: BTreeSet<NodeId> = extra.into_iter().collect();
        for e in &edges {
            nodes.insert(e.u);
            nodes.insert(e.v);
        }
        let cost = edges.iter().map(|e| e.cost).sum();
        Solution { nodes, edges, cost }
    }

    pub fn single(node: NodeId) -> Self {
        Solution::from_edges([], [node])
    }

    /// Keeps `cost` as recorded, without recomputing it.
    pub fn from_parts(nodes: BTreeSet<NodeId>, edges: BTreeSet<Edge>, cost: Cost) -> Self {
        Solution { nodes, edges, cost }
    }

    pub fn cost(&self) -> Cost {
        self.cost
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        self.nodes.contains(&v)
    }

    pub fn degrees(&self) -> BTreeMap<NodeId, usize> {
        let mut deg: BTreeMap<NodeId, usize> = self.nodes.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            *deg.entry(e.u).or_default() += 1;
            *deg.entry(e.v).or_default() += 1;
        }
        deg
    }

    pub fn steiner_nodes<'a>(&'a self, instance: &'a Instance) -> impl Iterator<Item = NodeId> + 'a {
        self.nodes.iter().copied().filter(|&v| !instance.is_terminal(v))
    }

    /// True when every node and edge is still present in `graph`.
    pub fn lives_in(&self, graph: &Graph) -> bool {
        self.nodes.iter().all(|&v| graph.is_live(v))
            && self
                .edges
                .iter()
                .all(|e| graph.edge_cost(e.u, e.v) == Some(e.cost))
    }
}

/// Single-source shortest paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathResult {
    pub source: NodeId,
    dist: Vec<Option<Cost>>,
    pred: Vec<Option<NodeId>>,
}

impl PathResult {
    pub fn distance(&self, v: NodeId) -> Option<Cost> {
        self.dist.get(v).copied().flatten()
    }

    pub fn predecessor(&self, v: NodeId) -> Option<NodeId> {
        self.pred.get(v).copied().flatten()
    }

    pub fn distances(&self) -> &[Option<Cost>] {
        &self.dist
    }

    /// Node sequence from the source to `target`.
    pub fn path_to(&self, target: NodeId) -> Option<Vec<NodeId>> {
        self.distance(target)?;
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = self.predecessor(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

/// Dijkstra from `source`. Among equal-length routes the predecessor with
/// the smallest id wins, so paths are deterministic.
pub fn dijkstra(graph: &Graph, source: NodeId) -> Result<PathResult, GraphError> {
    graph.check(source)?;
    Ok(dijkstra_bounded(graph, source, None))
}

/// Dijkstra that stops settling nodes once the distance exceeds `limit`.
/// Nodes beyond the limit are reported as unreachable.
pub(crate) fn dijkstra_bounded(graph: &Graph, source: NodeId, limit: Option<Cost>) -> PathResult {
    let n = graph.slots();
    let mut dist: Vec<Option<Cost>> = vec![None; n];
    let mut pred: Vec<Option<NodeId>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        if limit.is_some_and(|l| d > l) {
            break;
        }
        done[u] = true;
        for &(v, c) in graph.neighbors(u) {
            if done[v] {
                continue;
            }
            let nd = d + c;
            match dist[v] {
                Some(old) if old < nd => {}
                Some(old) if old == nd => {
                    if pred[v].is_some_and(|p| u < p) {
                        pred[v] = Some(u);
                    }
                }
                _ => {
                    dist[v] = Some(nd);
                    pred[v] = Some(u);
                    heap.push(Reverse((nd, v)));
                }
            }
        }
    }
    // drop tentative labels that were never settled under the limit
    for v in 0..n {
        if !done[v] {
            dist[v] = None;
            pred[v] = None;
        }
    }
    PathResult { source, dist, pred }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningForest {
    pub edges: Vec<Edge>,
    pub cost: Cost,
    /// Number of trees in the forest, isolated nodes included.
    pub components: usize,
}

/// Kruskal over the live graph.
pub fn minimum_spanning_tree(graph: &Graph) -> SpanningForest {
    let edges = kruskal(graph.slots(), graph.edges());
    let cost = edges.iter().map(|e| e.cost).sum();
    SpanningForest {
        components: graph.node_count() - edges.len(),
        edges,
        cost,
    }
}

/// Minimum spanning forest of an arbitrary edge list. Ties follow
/// [`Edge::mst_order`].
pub fn kruskal(slots: usize, edges: impl IntoIterator<Item = Edge>) -> Vec<Edge> {
    let mut sorted: Vec<Edge> = edges.into_iter().collect();
    sorted.sort_by_key(Edge::mst_order);
    sorted.dedup_by_key(|e| e.key());
    let slots = sorted.iter().map(|e| e.v + 1).max().unwrap_or(0).max(slots);
    let mut dsu = DisjointSet::new(slots);
    sorted.into_iter().filter(|e| dsu.union(e.u, e.v)).collect()
}

/// Components of the live graph, each sorted, ordered by smallest member.
pub fn connected_components(graph: &Graph) -> Vec<Vec<NodeId>> {
    components_of(graph.nodes(), graph.edges())
}

/// Components of the subgraph formed by `nodes` and `edges`; edge
/// endpoints are added to the node set.
pub fn components_of(
    nodes: impl IntoIterator<Item = NodeId>,
    edges: impl IntoIterator<Item = Edge>,
) -> Vec<Vec<NodeId>> {
    let mut members: BTreeSet<NodeId> = nodes.into_iter().collect();
    let edges: Vec<Edge> = edges.into_iter().collect();
    for e in &edges {
        members.insert(e.u);
        members.insert(e.v);
    }
    let slots = members.iter().next_back().map_or(0, |&m| m + 1);
    let mut dsu = DisjointSet::new(slots);
    for e in &edges {
        dsu.union(e.u, e.v);
    }
    let mut groups: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
    for &v in &members {
        groups.entry(dsu.find(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<NodeId>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeViolation {
    #[error("edge {0} is not an edge of the graph")]
    ForeignEdge(Edge),
    #[error("edge {0} closes a cycle")]
    Cycle(Edge),
    #[error("solution falls apart into {0} components")]
    Disconnected(usize),
    #[error("terminal {0} is not covered")]
    MissingTerminal(NodeId),
    #[error("recorded cost {recorded} differs from edge sum {actual}")]
    CostMismatch { recorded: Cost, actual: Cost },
}

/// Checks the tree properties of `candidate` against `instance`, reporting
/// the first violation found.
pub fn validate_tree(candidate: &Solution, instance: &Instance) -> Result<(), TreeViolation> {
    let graph = instance.graph();
    for e in candidate.edges() {
        if graph.edge_cost(e.u, e.v) != Some(e.cost) {
            return Err(TreeViolation::ForeignEdge(*e));
        }
    }
    let index: BTreeMap<NodeId, usize> = candidate
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut dsu = DisjointSet::new(index.len());
    for e in candidate.edges() {
        if !dsu.union(index[&e.u], index[&e.v]) {
            return Err(TreeViolation::Cycle(*e));
        }
    }
    // acyclic, so components = nodes - edges
    let components = index.len() - candidate.edges().len();
    if components > 1 {
        return Err(TreeViolation::Disconnected(components));
    }
    if let Some(&t) = instance.terminals().iter().find(|t| !candidate.contains_node(**t)) {
        return Err(TreeViolation::MissingTerminal(t));
    }
    let actual: Cost = candidate.edges().iter().map(|e| e.cost).sum();
    if actual != candidate.cost() {
        return Err(TreeViolation::CostMismatch {
            recorded: candidate.cost(),
            actual,
        });
    }
    Ok(())
}

/// Strips non-terminal leaves (and isolated non-terminals) until every leaf
/// is a terminal.
pub fn prune_degree_one(candidate: &Solution, is_terminal: impl Fn(NodeId) -> bool) -> Solution {
    let mut adj: BTreeMap<NodeId, BTreeSet<NodeId>> =
        candidate.nodes().iter().map(|&v| (v, BTreeSet::new())).collect();
    let mut cost_of: BTreeMap<(NodeId, NodeId), Cost> = BTreeMap::new();
    for e in candidate.edges() {
        adj.entry(e.u).or_default().insert(e.v);
        adj.entry(e.v).or_default().insert(e.u);
        cost_of.insert(e.key(), e.cost);
    }
    let mut queue: Vec<NodeId> = adj
        .iter()
        .filter(|(v, ns)| ns.len() <= 1 && !is_terminal(**v))
        .map(|(v, _)| *v)
        .collect();
    while let Some(v) = queue.pop() {
        let Some(ns) = adj.remove(&v) else { continue };
        for n in ns {
            let e = Edge::new(v, n, 0);
            cost_of.remove(&e.key());
            if let Some(list) = adj.get_mut(&n) {
                list.remove(&v);
                if list.len() <= 1 && !is_terminal(n) {
                    queue.push(n);
                }
            }
        }
    }
    Solution::from_edges(
        cost_of.into_iter().map(|((u, v), c)| Edge { u, v, cost: c }),
        adj.into_keys(),
    )
}

/// MST of the edge union followed by leaf pruning: the standard way every
/// neighbourhood move turns a connected subgraph back into a Steiner tree.
pub fn tree_from_subgraph(
    nodes: impl IntoIterator<Item = NodeId>,
    edges: impl IntoIterator<Item = Edge>,
    is_terminal: impl Fn(NodeId) -> bool,
) -> Solution {
    let nodes: BTreeSet<NodeId> = nodes.into_iter().collect();
    let slots = nodes.iter().next_back().map_or(0, |&m| m + 1);
    let mst = kruskal(slots, edges);
    prune_degree_one(&Solution::from_edges(mst, nodes), is_terminal)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Nodes 1-2-3, unit edges, terminals {1, 3}.
    pub fn path3() -> Instance {
        let g = Graph::from_edges(4, [(1, 2, 1), (2, 3, 1)]).unwrap();
        let mut inst = Instance::new(g, [1, 3]).unwrap();
        inst.graph_mut().remove_node(0);
        inst
    }

    /// Terminals 1, 2, 3 pairwise at cost 3, hub 4 at cost 1 from each.
    pub fn k4star() -> Instance {
        let g = Graph::from_edges(
            5,
            [(1, 4, 1), (2, 4, 1), (3, 4, 1), (1, 2, 3), (2, 3, 3), (1, 3, 3)],
        )
        .unwrap();
        let mut inst = Instance::new(g, [1, 2, 3]).unwrap();
        inst.graph_mut().remove_node(0);
        inst
    }

    /// K4STAR plus Steiner node 5 hanging off 4 with cost 10.
    pub fn k4star_tail() -> Instance {
        let g = Graph::from_edges(
            6,
            [
                (1, 4, 1),
                (2, 4, 1),
                (3, 4, 1),
                (1, 2, 3),
                (2, 3, 3),
                (1, 3, 3),
                (4, 5, 10),
            ],
        )
        .unwrap();
        let mut inst = Instance::new(g, [1, 2, 3]).unwrap();
        inst.graph_mut().remove_node(0);
        inst
    }

    pub fn star() -> Solution {
        Solution::from_edges([Edge::new(1, 4, 1), Edge::new(2, 4, 1), Edge::new(3, 4, 1)], [])
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn dijkstra_path3() {
        let inst = path3();
        let r = dijkstra(inst.graph(), 1).unwrap();
        assert_eq!(r.distance(1), Some(0));
        assert_eq!(r.distance(2), Some(1));
        assert_eq!(r.distance(3), Some(2));
        assert_eq!(r.path_to(3).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn dijkstra_k4star() {
        let inst = k4star();
        let r = dijkstra(inst.graph(), 1).unwrap();
        assert_eq!(r.distance(4), Some(1));
        assert_eq!(r.distance(2), Some(2));
        assert_eq!(r.distance(3), Some(2));
        // tie between 1-2 direct (3) is not a tie; 1-4-2 is strictly shorter
        assert_eq!(r.path_to(2).unwrap(), vec![1, 4, 2]);
    }

    #[test]
    fn dijkstra_isolated_and_unknown() {
        let g = Graph::from_edges(10, [(1, 2, 1)]).unwrap();
        let r = dijkstra(&g, 1).unwrap();
        assert_eq!(r.distance(9), None);
        assert_eq!(r.path_to(9), None);
        let mut g2 = g.clone();
        g2.remove_node(5);
        assert_eq!(dijkstra(&g2, 5), Err(GraphError::UnknownNode(5)));
        assert_eq!(dijkstra(&g2, 42), Err(GraphError::UnknownNode(42)));
    }

    #[test]
    fn dijkstra_tie_prefers_smaller_predecessor() {
        // 0 -> {2, 1} -> 3 with equal lengths
        let g = Graph::from_edges(4, [(0, 2, 1), (0, 1, 1), (2, 3, 1), (1, 3, 1)]).unwrap();
        let r = dijkstra(&g, 0).unwrap();
        assert_eq!(r.predecessor(3), Some(1));
    }

    #[test]
    fn mst_fixtures() {
        let f = minimum_spanning_tree(k4star().graph());
        assert_eq!(f.cost, 3);
        assert_eq!(
            f.edges,
            vec![Edge::new(1, 4, 1), Edge::new(2, 4, 1), Edge::new(3, 4, 1)]
        );
        assert_eq!(f.components, 1);
        let p = minimum_spanning_tree(path3().graph());
        assert_eq!(p.cost, 2);
        assert_eq!(p.edges.len(), 2);
    }

    #[test]
    fn mst_of_disconnected_graph_is_a_forest() {
        let g = Graph::from_edges(4, [(0, 1, 5), (2, 3, 7)]).unwrap();
        let f = minimum_spanning_tree(&g);
        assert_eq!(f.edges.len(), 2);
        assert_eq!(f.cost, 12);
        assert_eq!(f.components, 2);
        assert_eq!(connected_components(&g).len(), 2);
    }

    #[test]
    fn components_fixtures() {
        let mut p = path3();
        assert_eq!(connected_components(p.graph()), vec![vec![1, 2, 3]]);
        p.graph_mut().remove_node(2);
        assert_eq!(connected_components(p.graph()), vec![vec![1], vec![3]]);

        let mut k = k4star();
        k.graph_mut().remove_node(4);
        k.graph_mut().remove_edge(1, 2);
        k.graph_mut().remove_edge(1, 3);
        assert_eq!(connected_components(k.graph()), vec![vec![1], vec![2, 3]]);
    }

    #[test]
    fn validate_tree_cases() {
        let k = k4star();
        assert_eq!(validate_tree(&star(), &k), Ok(()));

        let mut edges: Vec<Edge> = star().edges().iter().copied().collect();
        edges.push(Edge::new(1, 2, 3));
        let cyc = Solution::from_edges(edges, []);
        assert!(matches!(validate_tree(&cyc, &k), Err(TreeViolation::Cycle(_))));

        let partial = Solution::from_edges([Edge::new(1, 4, 1), Edge::new(2, 4, 1)], []);
        assert_eq!(
            validate_tree(&partial, &k),
            Err(TreeViolation::MissingTerminal(3))
        );

        let split = Solution::from_edges([Edge::new(1, 4, 1)], [2, 3]);
        assert_eq!(validate_tree(&split, &k), Err(TreeViolation::Disconnected(3)));

        let s = star();
        let lying = Solution::from_parts(s.nodes().clone(), s.edges().clone(), 5);
        assert_eq!(
            validate_tree(&lying, &k),
            Err(TreeViolation::CostMismatch {
                recorded: 5,
                actual: 3
            })
        );

        let foreign = Solution::from_edges([Edge::new(1, 4, 2), Edge::new(2, 4, 1), Edge::new(3, 4, 1)], []);
        assert!(matches!(validate_tree(&foreign, &k), Err(TreeViolation::ForeignEdge(_))));
    }

    #[test]
    fn prune_cases() {
        let k = k4star_tail();
        let mut edges: Vec<Edge> = star().edges().iter().copied().collect();
        edges.push(Edge::new(4, 5, 10));
        let dangling = Solution::from_edges(edges, []);
        let pruned = prune_degree_one(&dangling, |v| k.is_terminal(v));
        assert_eq!(pruned, star());
        assert_eq!(pruned.cost(), 3);

        // chain t1 - a - b with only t1 required
        let chain = Solution::from_edges([Edge::new(1, 2, 4), Edge::new(2, 3, 4)], []);
        let single = prune_degree_one(&chain, |v| v == 1);
        assert_eq!(single, Solution::single(1));
        assert_eq!(single.cost(), 0);

        let fix = prune_degree_one(&star(), |v| k.is_terminal(v));
        assert_eq!(fix, star());
    }

    #[test]
    fn graph_rejects_bad_edges() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1, 1), Err(GraphError::SelfLoop(1)));
        g.add_edge(0, 1, 4).unwrap();
        assert_eq!(g.add_edge(1, 0, 2), Err(GraphError::DuplicateEdge(0, 1)));
        g.add_or_min_edge(1, 0, 2).unwrap();
        assert_eq!(g.edge_cost(0, 1), Some(2));
        g.add_or_min_edge(1, 0, 9).unwrap();
        assert_eq!(g.edge_cost(0, 1), Some(2));
        assert_eq!(g.add_edge(0, 7, 1), Err(GraphError::UnknownNode(7)));
        assert_eq!(g.remove_node(1).len(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn instance_requires_live_terminals() {
        let g = Graph::new(3);
        assert_eq!(Instance::new(g.clone(), []), Err(GraphError::NoTerminals));
        assert_eq!(Instance::new(g, [5]), Err(GraphError::UnknownNode(5)));
        let g = Graph::from_edges(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        let inst = Instance::new(g, [0, 3]).unwrap();
        assert_eq!(inst.check_feasible(), Err(GraphError::Disconnected(0, 3)));
    }
}
