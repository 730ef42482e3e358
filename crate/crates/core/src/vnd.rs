//! Variable neighborhood descent over two moves: inserting a random path
//! between branch nodes of the tree, and removing Steiner nodes followed by
//! a reconnection of the pieces.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    components_of, dijkstra_bounded, kruskal, tree_from_subgraph, Cost, Edge, Instance, NodeId,
    Solution,
};
use crate::score::ScoreTable;

/// Which degree decides that a node is a branch node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMode {
    /// Degree inside the current tree.
    #[default]
    Solution,
    /// Degree in the (reduced) graph.
    Graph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VndParams {
    pub b_min: usize,
    pub b_max: usize,
    /// Score restarts per local search call.
    pub max_restarts: usize,
    /// Victim subsets tried per removal sweep.
    pub combination_cap: usize,
    /// Longest random walk; `None` means four times the live node count.
    pub walk_cap: Option<usize>,
    pub walk_attempts: usize,
    /// Nodes per component that seed the reconnection Dijkstra runs.
    pub reconnect_reps: usize,
    pub degree_mode: DegreeMode,
    pub seed: u64,
    #[serde(skip)]
    pub deadline: Option<Instant>,
}

impl Default for VndParams {
    fn default() -> Self {
        VndParams {
            b_min: 1,
            b_max: 256,
            max_restarts: 5,
            combination_cap: 50,
            walk_cap: None,
            walk_attempts: 10,
            reconnect_reps: 3,
            degree_mode: DegreeMode::Solution,
            seed: 0,
            deadline: None,
        }
    }
}

impl VndParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.b_min == 0 || self.b_min > self.b_max {
            return Err(format!(
                "neighborhood sizes must satisfy 1 <= bmin <= bmax (got {} and {})",
                self.b_min, self.b_max
            ));
        }
        if self.combination_cap == 0
            || self.walk_attempts == 0
            || self.reconnect_reps == 0
            || self.walk_cap == Some(0)
        {
            return Err("search caps must be positive".into());
        }
        Ok(())
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconnectError {
    #[error("components {0} and {1} cannot be joined")]
    Unreachable(usize, usize),
}

/// Receives every new best solution and controls round boundaries.
pub trait BoundSink {
    fn publish(&mut self, solution: &Solution);

    /// Called before each VND round with the solver's current tree.
    fn round_boundary(&mut self, _current: &Solution) -> RoundAction {
        RoundAction::Continue
    }
}

pub enum RoundAction {
    Continue,
    Stop,
    /// Continue on a reduced graph; `current` must live in it.
    Replace { instance: Instance, current: Solution },
}

/// Collects published costs.
#[derive(Debug, Default, Clone)]
pub struct BoundRecorder {
    pub bounds: Vec<Cost>,
}

impl BoundSink for BoundRecorder {
    fn publish(&mut self, solution: &Solution) {
        self.bounds.push(solution.cost());
    }
}

fn branch_nodes(instance: &Instance, s: &Solution, mode: DegreeMode) -> Vec<NodeId> {
    match mode {
        DegreeMode::Solution => s
            .degrees()
            .into_iter()
            .filter(|&(_, d)| d > 2)
            .map(|(v, _)| v)
            .collect(),
        DegreeMode::Graph => s
            .nodes()
            .iter()
            .copied()
            .filter(|&v| instance.graph().degree(v) > 2)
            .collect(),
    }
}

/// Branch nodes of `s`, or its terminals when there are none.
fn start_candidates(instance: &Instance, s: &Solution, mode: DegreeMode) -> Vec<NodeId> {
    let branch = branch_nodes(instance, s, mode);
    if !branch.is_empty() {
        return branch;
    }
    s.nodes()
        .iter()
        .copied()
        .filter(|&v| instance.is_terminal(v))
        .collect()
}

/// Self-avoiding random walk from `start` that ends on the first other
/// branch node of `s` (any other node of `s` if there is none). Empty when
/// no such walk turns up within the caps.
pub fn random_path(
    instance: &Instance,
    s: &Solution,
    start: NodeId,
    params: &VndParams,
    rng: &mut impl Rng,
) -> Vec<NodeId> {
    let graph = instance.graph();
    if !graph.is_live(start) {
        return Vec::new();
    }
    let mut targets: BTreeSet<NodeId> = branch_nodes(instance, s, params.degree_mode)
        .into_iter()
        .filter(|&v| v != start)
        .collect();
    if targets.is_empty() {
        targets = s.nodes().iter().copied().filter(|&v| v != start).collect();
    }
    if targets.is_empty() {
        return Vec::new();
    }
    let cap = params.walk_cap.unwrap_or(4 * graph.node_count());
    let mut visited = vec![false; graph.slots()];
    let mut options = Vec::new();
    for _ in 0..params.walk_attempts {
        let mut path = vec![start];
        visited[start] = true;
        let mut cur = start;
        while path.len() <= cap {
            options.clear();
            options.extend(
                graph
                    .neighbors(cur)
                    .iter()
                    .map(|&(v, _)| v)
                    .filter(|&v| !visited[v]),
            );
            let Some(&next) = options.choose(rng) else { break };
            path.push(next);
            visited[next] = true;
            if targets.contains(&next) {
                return path;
            }
            cur = next;
        }
        for &v in &path {
            visited[v] = false;
        }
    }
    Vec::new()
}

/// Adds the path to `s`, then restores a tree by MST and leaf pruning.
pub fn insert_path(s: &Solution, path: &[NodeId], instance: &Instance) -> Solution {
    let graph = instance.graph();
    let extra = path.windows(2).map(|w| {
        let c = graph.edge_cost(w[0], w[1]).expect("walk follows graph edges");
        Edge::new(w[0], w[1], c)
    });
    let edges: Vec<Edge> = s.edges().iter().copied().chain(extra).collect();
    tree_from_subgraph(
        s.nodes().iter().copied().chain(path.iter().copied()),
        edges,
        |v| instance.is_terminal(v),
    )
}

fn start_count(b: usize, nodes: usize) -> usize {
    let ln = (nodes.max(1) as f64).ln();
    (b as f64 * ln * ln).ceil() as usize
}

/// First-improvement insertion search: walks from the best-scored branch
/// nodes, inserting each path cumulatively into a working copy.
pub fn insertion_local_search(
    instance: &Instance,
    s: &Solution,
    b: usize,
    params: &VndParams,
    scores: &mut ScoreTable,
    rng: &mut impl Rng,
) -> Solution {
    let k = start_count(b, instance.graph().node_count());
    for _ in 0..params.max_restarts {
        let candidates = start_candidates(instance, s, params.degree_mode);
        if candidates.is_empty() {
            break;
        }
        let starts = scores.top_scored(candidates, k);
        let mut working = s.clone();
        for start in starts {
            if params.expired() {
                return s.clone();
            }
            if !working.contains_node(start) {
                continue;
            }
            let path = random_path(instance, &working, start, params, rng);
            if path.len() < 2 {
                continue;
            }
            let next = insert_path(&working, &path, instance);
            if next.cost() < s.cost() {
                scores.record_outcome(next.nodes().iter().copied(), true);
                return next;
            }
            let fresh: Vec<NodeId> = next
                .nodes()
                .difference(working.nodes())
                .copied()
                .collect();
            scores.record_outcome(fresh, false);
            working = next;
        }
        scores.restart(rng);
    }
    s.clone()
}

/// Joins the components of `partial` (a forest) with shortest paths found
/// from a few random nodes per component, then rebuilds a Steiner tree.
/// Components without terminals are dropped first.
pub fn reconnect(
    instance: &Instance,
    partial: &Solution,
    params: &VndParams,
    rng: &mut impl Rng,
) -> Result<Solution, ReconnectError> {
    let graph = instance.graph();
    let is_terminal = |v| instance.is_terminal(v);
    let comps: Vec<Vec<NodeId>> = components_of(
        partial.nodes().iter().copied(),
        partial.edges().iter().copied(),
    )
    .into_iter()
    .filter(|c| c.iter().any(|&v| is_terminal(v)))
    .collect();
    let kept: BTreeSet<NodeId> = comps.iter().flatten().copied().collect();
    let kept_edges: Vec<Edge> = partial
        .edges()
        .iter()
        .copied()
        .filter(|e| kept.contains(&e.u))
        .collect();
    if comps.len() <= 1 {
        return Ok(tree_from_subgraph(kept, kept_edges, is_terminal));
    }

    let mut comp_of: Vec<Option<usize>> = vec![None; graph.slots()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = Some(i);
        }
    }
    // best (distance, rep, reached node) per component pair
    let mut links: BTreeMap<(usize, usize), (Cost, NodeId, NodeId)> = BTreeMap::new();
    let mut trees = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        let reps: Vec<NodeId> = c
            .choose_multiple(rng, params.reconnect_reps.min(c.len()))
            .copied()
            .collect();
        for r in reps {
            let paths = dijkstra_bounded(graph, r, None);
            for (v, d) in paths.distances().iter().enumerate() {
                let (Some(d), Some(j)) = (*d, comp_of[v]) else { continue };
                if j == i {
                    continue;
                }
                let key = (i.min(j), i.max(j));
                let cand = (d, r, v);
                if links.get(&key).is_none_or(|&old| cand < old) {
                    links.insert(key, cand);
                }
            }
            trees.insert(r, paths);
        }
    }
    let by_pair: BTreeMap<(usize, usize), (Cost, NodeId, NodeId)> = links;
    let comp_edges = by_pair
        .iter()
        .map(|(&(a, b), &(d, _, _))| Edge { u: a, v: b, cost: d });
    let chosen = kruskal(comps.len(), comp_edges);
    if chosen.len() + 1 < comps.len() {
        let joined = components_of(0..comps.len(), chosen.iter().copied());
        return Err(ReconnectError::Unreachable(joined[0][0], joined[1][0]));
    }
    let mut nodes = kept;
    let mut edges = kept_edges;
    for ce in chosen {
        let (_, r, v) = by_pair[&(ce.u, ce.v)];
        let path = trees[&r].path_to(v).expect("reached node has a path");
        nodes.extend(path.iter().copied());
        for w in path.windows(2) {
            let c = graph.edge_cost(w[0], w[1]).expect("path edge exists");
            edges.push(Edge::new(w[0], w[1], c));
        }
    }
    Ok(tree_from_subgraph(nodes, edges, is_terminal))
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Up to `cap` distinct size-`k` subsets of `0..n`, drawn uniformly without
/// replacement; all of them (shuffled) when there are at most `cap`.
pub fn sample_combinations(n: usize, k: usize, cap: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    if k > n || cap == 0 {
        return Vec::new();
    }
    if binomial(n, k) <= cap as u128 {
        let mut all = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            all.push(cur.clone());
            // advance to the next combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else { break };
            cur[i] += 1;
            for j in i + 1..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
        all.shuffle(rng);
        return all;
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(cap);
    while out.len() < cap {
        let mut pick = rand::seq::index::sample(rng, n, k).into_vec();
        pick.sort_unstable();
        if seen.insert(pick.clone()) {
            out.push(pick);
        }
    }
    out
}

/// First-improvement removal search over subsets of the best-scored
/// Steiner nodes.
pub fn removal_local_search(
    instance: &Instance,
    s: &Solution,
    b: usize,
    params: &VndParams,
    scores: &mut ScoreTable,
    rng: &mut impl Rng,
) -> Solution {
    let steiner: Vec<NodeId> = s.steiner_nodes(instance).collect();
    if steiner.len() < b {
        return s.clone();
    }
    for _ in 0..params.max_restarts {
        let pool = scores.top_scored(steiner.iter().copied(), 3 * b);
        for combo in sample_combinations(pool.len(), b, params.combination_cap, rng) {
            if params.expired() {
                return s.clone();
            }
            let victims: BTreeSet<NodeId> = combo.iter().map(|&i| pool[i]).collect();
            let partial = Solution::from_edges(
                s.edges()
                    .iter()
                    .copied()
                    .filter(|e| !victims.contains(&e.u) && !victims.contains(&e.v)),
                s.nodes().iter().copied().filter(|v| !victims.contains(v)),
            );
            let Ok(next) = reconnect(instance, &partial, params, rng) else {
                continue;
            };
            if next.cost() < s.cost() {
                scores.record_outcome(next.nodes().iter().copied(), true);
                return next;
            }
            let fresh: Vec<NodeId> = next.nodes().difference(s.nodes()).copied().collect();
            scores.record_outcome(fresh, false);
        }
        scores.restart(rng);
    }
    s.clone()
}

/// Escalates the neighborhood size from `b_min` by doubling until it passes
/// `b_max`, dropping back to `b_min` after every improvement.
pub fn vnd_descent(
    instance: &Instance,
    s0: &Solution,
    params: &VndParams,
    scores: &mut ScoreTable,
    rng: &mut impl Rng,
    sink: &mut dyn BoundSink,
) -> Solution {
    let mut reduced: Option<Instance> = None;
    let mut current = s0.clone();
    let mut best = s0.clone();
    let mut b = params.b_min;
    while b <= params.b_max {
        match sink.round_boundary(&current) {
            RoundAction::Continue => {}
            RoundAction::Stop => break,
            RoundAction::Replace {
                instance: next,
                current: repaired,
            } => {
                reduced = Some(next);
                current = repaired;
            }
        }
        if params.expired() {
            break;
        }
        let inst = reduced.as_ref().unwrap_or(instance);
        let mut next = insertion_local_search(inst, &current, b, params, scores, rng);
        if next.cost() >= current.cost() {
            next = removal_local_search(inst, &current, b, params, scores, rng);
        }
        if next.cost() < current.cost() {
            current = next;
            if current.cost() < best.cost() {
                best = current.clone();
                sink.publish(&best);
            }
            b = params.b_min;
        } else {
            b *= 2;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{validate_tree, Graph};
    use crate::score::ScoreConfig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn expensive_k4() -> Solution {
        Solution::from_edges([Edge::new(1, 2, 3), Edge::new(2, 3, 3)], [])
    }

    #[test]
    fn walk_from_star_hub_falls_back_to_any_solution_node() {
        let k = k4star();
        let p = random_path(&k, &star(), 4, &VndParams::default(), &mut rng(1));
        assert!(p.len() >= 2);
        assert_eq!(p[0], 4);
        assert!([1, 2, 3].contains(p.last().unwrap()));
        let again = random_path(&k, &star(), 4, &VndParams::default(), &mut rng(1));
        assert_eq!(p, again);
    }

    #[test]
    fn walk_from_cut_off_start_is_empty() {
        let mut g = Graph::from_edges(5, [(1, 2, 1), (3, 4, 1)]).unwrap();
        g.remove_node(0);
        let inst = Instance::new(g, [1, 2]).unwrap();
        let s = Solution::from_edges([Edge::new(1, 2, 1)], []);
        assert!(random_path(&inst, &s, 3, &VndParams::default(), &mut rng(0)).is_empty());
    }

    #[test]
    fn insert_path_cases() {
        let k = k4star();
        let better = insert_path(&expensive_k4(), &[1, 4, 2], &k);
        assert!(better.cost() <= 6);
        validate_tree(&better, &k).unwrap();
        // union {1-2, 2-3, 1-4, 4-2}: MST keeps 1-4, 4-2 and 2-3
        assert_eq!(better.cost(), 5);
        let star_again = insert_path(&better, &[4, 3], &k);
        assert_eq!(star_again, star());

        assert_eq!(insert_path(&star(), &[1, 4, 2], &k), star());
        let tail = k4star_tail();
        assert_eq!(insert_path(&star(), &[4, 5], &tail), star());
    }

    #[test]
    fn insertion_search_finds_the_star() {
        let k = k4star();
        let mut scores = ScoreTable::new(&k, ScoreConfig::default());
        let mut r = rng(5);
        let mut s = expensive_k4();
        for _ in 0..10 {
            s = insertion_local_search(&k, &s, 1, &VndParams::default(), &mut scores, &mut r);
        }
        assert_eq!(s.cost(), 3);
    }

    #[test]
    fn insertion_search_keeps_optimum() {
        let p = path3();
        let s = Solution::from_edges([Edge::new(1, 2, 1), Edge::new(2, 3, 1)], []);
        let mut scores = ScoreTable::new(&p, ScoreConfig::default());
        let out = insertion_local_search(&p, &s, 1, &VndParams::default(), &mut scores, &mut rng(0));
        assert_eq!(out, s);
    }

    #[test]
    fn insertion_without_start_nodes() {
        let g = Graph::from_edges(2, [(0, 1, 1)]).unwrap();
        let inst = Instance::new(g, [0]).unwrap();
        let s = Solution::single(0);
        let mut scores = ScoreTable::new(&inst, ScoreConfig::default());
        let out = insertion_local_search(&inst, &s, 1, &VndParams::default(), &mut scores, &mut rng(0));
        assert_eq!(out, s);
    }

    #[test]
    fn reconnect_through_the_hub() {
        let (reduced, _) =
            crate::reduce::reduce_fixpoint(&k4star(), None, &Default::default()).unwrap();
        let pieces = Solution::from_edges([], [1, 2, 3]);
        let s = reconnect(&reduced, &pieces, &VndParams::default(), &mut rng(0)).unwrap();
        assert_eq!(s, star());
    }

    #[test]
    fn reconnect_single_component_is_a_tree_pass() {
        let k = k4star_tail();
        let mut edges: Vec<Edge> = star().edges().iter().copied().collect();
        edges.push(Edge::new(4, 5, 10));
        let s = reconnect(&k, &Solution::from_edges(edges, []), &VndParams::default(), &mut rng(0))
            .unwrap();
        assert_eq!(s, star());
    }

    #[test]
    fn reconnect_uses_the_only_bridge() {
        // {1,2} and {3,4} joined only by 2-3
        let mut g = Graph::from_edges(5, [(1, 2, 1), (2, 3, 7), (3, 4, 1)]).unwrap();
        g.remove_node(0);
        let inst = Instance::new(g, [1, 4]).unwrap();
        let pieces = Solution::from_edges([Edge::new(1, 2, 1), Edge::new(3, 4, 1)], []);
        for seed in 0..5 {
            let s = reconnect(&inst, &pieces, &VndParams::default(), &mut rng(seed)).unwrap();
            assert!(s.edges().contains(&Edge::new(2, 3, 7)));
            assert_eq!(s.cost(), 9);
        }
    }

    #[test]
    fn reconnect_unreachable() {
        let mut g = Graph::from_edges(5, [(1, 2, 1), (3, 4, 1)]).unwrap();
        g.remove_node(0);
        let inst = Instance::new(g, [1, 4]).unwrap();
        let pieces = Solution::from_edges([], [1, 4]);
        assert_eq!(
            reconnect(&inst, &pieces, &VndParams::default(), &mut rng(0)),
            Err(ReconnectError::Unreachable(0, 1))
        );
    }

    /// Terminals 1, 2, 3 around hub 4 (unit spokes). The current tree
    /// instead routes through a detour node 5 with spokes of cost 2.
    fn detour_fixture() -> (Instance, Solution) {
        let mut g = Graph::from_edges(
            6,
            [(1, 4, 1), (2, 4, 1), (3, 4, 1), (1, 5, 2), (2, 5, 2), (3, 5, 2)],
        )
        .unwrap();
        g.remove_node(0);
        let inst = Instance::new(g, [1, 2, 3]).unwrap();
        let s = Solution::from_edges([Edge::new(1, 5, 2), Edge::new(2, 5, 2), Edge::new(3, 5, 2)], []);
        (inst, s)
    }

    #[test]
    fn removing_the_detour_improves() {
        let (inst, s) = detour_fixture();
        let mut scores = ScoreTable::new(&inst, ScoreConfig::default());
        let out = removal_local_search(&inst, &s, 1, &VndParams::default(), &mut scores, &mut rng(0));
        assert_eq!(out.cost(), 3);
        assert!(out.contains_node(4));
        assert_eq!(crate::exact::exact_steiner(&inst).unwrap().cost(), 3);
        // the winning tree is rewarded
        assert_eq!(scores.score(4), 1);
    }

    #[test]
    fn removal_with_too_few_steiner_nodes() {
        let (inst, s) = detour_fixture();
        let mut scores = ScoreTable::new(&inst, ScoreConfig::default());
        assert_eq!(
            removal_local_search(&inst, &s, 2, &VndParams::default(), &mut scores, &mut rng(0)),
            s
        );
        let all_terminal = Solution::from_edges([Edge::new(1, 2, 1)], []);
        let g = Graph::from_edges(3, [(1, 2, 1)]).unwrap();
        let inst2 = Instance::new(g, [1, 2]).unwrap();
        let mut scores2 = ScoreTable::new(&inst2, ScoreConfig::default());
        assert_eq!(
            removal_local_search(&inst2, &all_terminal, 1, &VndParams::default(), &mut scores2, &mut rng(0)),
            all_terminal
        );
    }

    #[test]
    fn combinations_are_distinct_and_capped() {
        let mut r = rng(9);
        let all = sample_combinations(6, 2, 50, &mut r);
        assert_eq!(all.len(), 15);
        let set: HashSet<Vec<usize>> = all.iter().cloned().collect();
        assert_eq!(set.len(), 15);
        let some = sample_combinations(30, 10, 50, &mut r);
        assert_eq!(some.len(), 50);
        let set: HashSet<Vec<usize>> = some.iter().cloned().collect();
        assert_eq!(set.len(), 50);
        assert!(some.iter().all(|c| c.len() == 10 && c.windows(2).all(|w| w[0] < w[1])));
        assert!(sample_combinations(3, 4, 50, &mut r).is_empty());
        assert_eq!(sample_combinations(3, 0, 50, &mut r), vec![Vec::<usize>::new()]);
        assert!(binomial(768, 256) > 50);
        assert_eq!(binomial(6, 2), 15);
    }

    #[test]
    fn descent_reaches_the_star() {
        let k = k4star();
        let mut scores = ScoreTable::new(&k, ScoreConfig::default());
        let mut sink = BoundRecorder::default();
        let best = vnd_descent(&k, &expensive_k4(), &VndParams::default(), &mut scores, &mut rng(3), &mut sink);
        assert_eq!(best.cost(), 3);
        validate_tree(&best, &k).unwrap();
        assert!(sink.bounds.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(sink.bounds.last(), Some(&3));
    }

    #[test]
    fn descent_on_optimal_start_publishes_nothing() {
        let p = path3();
        let s = Solution::from_edges([Edge::new(1, 2, 1), Edge::new(2, 3, 1)], []);
        let mut scores = ScoreTable::new(&p, ScoreConfig::default());
        let mut sink = BoundRecorder::default();
        let best = vnd_descent(&p, &s, &VndParams::default(), &mut scores, &mut rng(0), &mut sink);
        assert_eq!(best, s);
        assert!(sink.bounds.is_empty());
    }

    struct Counter(usize);
    impl BoundSink for Counter {
        fn publish(&mut self, _: &Solution) {}
        fn round_boundary(&mut self, _: &Solution) -> RoundAction {
            self.0 += 1;
            RoundAction::Continue
        }
    }

    #[test]
    fn descent_round_count_follows_doubling() {
        let p = path3();
        let s = Solution::from_edges([Edge::new(1, 2, 1), Edge::new(2, 3, 1)], []);
        let mut scores = ScoreTable::new(&p, ScoreConfig::default());
        let mut c = Counter(0);
        vnd_descent(&p, &s, &VndParams::default(), &mut scores, &mut rng(0), &mut c);
        // b = 1, 2, 4, ..., 256
        assert_eq!(c.0, 9);
        let single = VndParams {
            b_max: 1,
            ..VndParams::default()
        };
        let mut c = Counter(0);
        vnd_descent(&p, &s, &single, &mut scores, &mut rng(0), &mut c);
        assert_eq!(c.0, 1);
    }

    #[test]
    fn params_validation() {
        assert!(VndParams::default().validate().is_ok());
        let bad = VndParams {
            b_min: 4,
            b_max: 2,
            ..VndParams::default()
        };
        assert!(bad.validate().is_err());
        let zero = VndParams {
            b_min: 0,
            ..VndParams::default()
        };
        assert!(zero.validate().is_err());
    }
}
