//! Seeded random instances and brute-force references shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stpvnd::graph::{components_of, kruskal};
use stpvnd::{dijkstra, Cost, Edge, Graph, Instance, NodeId};

pub const CORPUS_SEED: u64 = 0x5747_2024;

/// Connected graph on nodes `1..=n` (slot 0 removed) with a random spanning
/// tree plus extra edges, integer weights 1–10 and `t` random terminals.
pub fn random_instance(rng: &mut impl Rng, n: usize, t: usize, extra: usize) -> Instance {
    let mut g = Graph::new(n + 1);
    g.remove_node(0);
    let mut order: Vec<NodeId> = (1..=n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        g.add_edge(order[i], parent, rng.gen_range(1..=10)).unwrap();
    }
    for _ in 0..extra {
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        if a != b && !g.has_edge(a, b) {
            g.add_edge(a, b, rng.gen_range(1..=10)).unwrap();
        }
    }
    let mut nodes: Vec<NodeId> = (1..=n).collect();
    nodes.shuffle(rng);
    Instance::new(g, nodes[..t].iter().copied()).unwrap()
}

/// `count` instances with at most `max_nodes` nodes and 6 terminals.
pub fn corpus(count: usize, max_nodes: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=max_nodes);
            let t = rng.gen_range(2..=n.min(6));
            let extra = rng.gen_range(0..=n * 2);
            random_instance(&mut rng, n, t, extra)
        })
        .collect()
}

/// Optimum by enumerating every node set that contains the terminals: the
/// cheapest spanning tree of a connected induced subgraph.
pub fn brute_force_steiner(instance: &Instance) -> Cost {
    let g = instance.graph();
    let steiner: Vec<NodeId> = g.nodes().filter(|&v| !instance.is_terminal(v)).collect();
    assert!(steiner.len() <= 20, "too many subsets");
    let mut best = Cost::MAX;
    for mask in 0u32..(1 << steiner.len()) {
        let mut set: BTreeSet<NodeId> = instance.terminals().iter().copied().collect();
        for (i, &v) in steiner.iter().enumerate() {
            if mask & (1 << i) != 0 {
                set.insert(v);
            }
        }
        let induced: Vec<Edge> = g
            .edges()
            .filter(|e| set.contains(&e.u) && set.contains(&e.v))
            .collect();
        if components_of(set.iter().copied(), induced.iter().copied()).len() != 1 {
            continue;
        }
        let cost: Cost = kruskal(g.slots(), induced).iter().map(|e| e.cost).sum();
        best = best.min(cost);
    }
    best
}

/// Every simple path from `s` to `t`, shortest total.
pub fn brute_force_distance(g: &Graph, s: NodeId, t: NodeId) -> Option<Cost> {
    fn go(g: &Graph, at: NodeId, t: NodeId, seen: &mut Vec<bool>, acc: Cost, best: &mut Option<Cost>) {
        if at == t {
            *best = Some(best.map_or(acc, |b| b.min(acc)));
            return;
        }
        for &(w, c) in g.neighbors(at) {
            if !seen[w] {
                seen[w] = true;
                go(g, w, t, seen, acc + c, best);
                seen[w] = false;
            }
        }
    }
    let mut seen = vec![false; g.slots()];
    seen[s] = true;
    let mut best = None;
    go(g, s, t, &mut seen, 0, &mut best);
    best
}

/// Cheapest spanning tree by trying every `n - 1` edge subset.
pub fn brute_force_mst(g: &Graph) -> Option<Cost> {
    let edges: Vec<Edge> = g.edges().collect();
    let nodes: Vec<NodeId> = g.nodes().collect();
    let need = nodes.len().saturating_sub(1);
    let mut best = None;
    for mask in 0u32..(1 << edges.len()) {
        if mask.count_ones() as usize != need {
            continue;
        }
        let chosen: Vec<Edge> = (0..edges.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| edges[i])
            .collect();
        if components_of(nodes.iter().copied(), chosen.iter().copied()).len() == 1 {
            let c: Cost = chosen.iter().map(|e| e.cost).sum();
            best = Some(best.map_or(c, |b: Cost| b.min(c)));
        }
    }
    best
}

/// Exact special distance: minimax path between `i` and `j` in the distance
/// graph on `{i, j} ∪ T`, so every intermediate stop is a terminal.
/// Distances come from Dijkstra, itself checked against path enumeration.
pub fn brute_force_special_distance(instance: &Instance, i: NodeId, j: NodeId) -> Option<Cost> {
    let g = instance.graph();
    let mut pts: Vec<NodeId> = vec![i, j];
    pts.extend(instance.terminals().iter().copied().filter(|&t| t != i && t != j));
    let k = pts.len();
    let mut m: Vec<Vec<Option<Cost>>> = pts
        .iter()
        .map(|&a| {
            let d = dijkstra(g, a).unwrap();
            pts.iter().map(|&b| d.distance(b)).collect()
        })
        .collect();
    for via in 2..k {
        for a in 0..k {
            for b in 0..k {
                if let (Some(x), Some(y)) = (m[a][via], m[via][b]) {
                    let cand = x.max(y);
                    if m[a][b].is_none_or(|c| cand < c) {
                        m[a][b] = Some(cand);
                    }
                }
            }
        }
    }
    m[0][1]
}

fn fixture(n: usize, edges: &[(NodeId, NodeId, Cost)], terminals: &[NodeId]) -> Instance {
    let mut g = Graph::from_edges(n + 1, edges.iter().copied()).unwrap();
    g.remove_node(0);
    Instance::new(g, terminals.iter().copied()).unwrap()
}

pub fn path3() -> Instance {
    fixture(3, &[(1, 2, 1), (2, 3, 1)], &[1, 3])
}

pub fn k4star() -> Instance {
    fixture(
        4,
        &[(1, 4, 1), (2, 4, 1), (3, 4, 1), (1, 2, 3), (2, 3, 3), (1, 3, 3)],
        &[1, 2, 3],
    )
}
