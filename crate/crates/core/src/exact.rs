//! Exact optimum for small terminal sets (Dreyfus–Wagner subset DP).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::graph::{tree_from_subgraph, Cost, Edge, Instance, NodeId, Solution};

pub const MAX_TERMINALS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{count} terminals exceed the exact solver limit of {limit}")]
    TooManyTerminals { count: usize, limit: usize },
    #[error("terminals are not mutually reachable")]
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Link {
    Unset,
    /// Terminal of a singleton mask.
    Root,
    /// Merge of `sub` and `mask ^ sub` at the same node.
    Split(u32),
    /// Reached over an edge from this (compact) node.
    Grow(usize),
}

/// `cost[mask][v]`: cheapest tree spanning the terminals in `mask` plus `v`.
struct DpTable {
    nodes: usize,
    cost: Vec<Cost>,
    link: Vec<Link>,
}

impl DpTable {
    fn at(&self, mask: u32, v: usize) -> usize {
        mask as usize * self.nodes + v
    }
}

/// Minimum Steiner tree. Refuses more than [`MAX_TERMINALS`] terminals.
pub fn exact_steiner(instance: &Instance) -> Result<Solution, ExactError> {
    let terms = instance.terminals();
    let k = terms.len();
    if k > MAX_TERMINALS {
        return Err(ExactError::TooManyTerminals {
            count: k,
            limit: MAX_TERMINALS,
        });
    }
    if k == 1 {
        return Ok(Solution::single(terms[0]));
    }
    let graph = instance.graph();
    let ids: Vec<NodeId> = graph.nodes().collect();
    let mut compact = vec![usize::MAX; graph.slots()];
    for (i, &v) in ids.iter().enumerate() {
        compact[v] = i;
    }
    let n = ids.len();
    let adj: Vec<Vec<(usize, Cost)>> = ids
        .iter()
        .map(|&v| graph.neighbors(v).iter().map(|&(w, c)| (compact[w], c)).collect())
        .collect();

    let full: u32 = (1 << k) - 1;
    let mut dp = DpTable {
        nodes: n,
        cost: vec![Cost::MAX; (full as usize + 1) * n],
        link: vec![Link::Unset; (full as usize + 1) * n],
    };
    for (i, &t) in terms.iter().enumerate() {
        let at = dp.at(1 << i, compact[t]);
        dp.cost[at] = 0;
        dp.link[at] = Link::Root;
    }
    let mut heap = BinaryHeap::new();
    for mask in 1..=full {
        if mask.count_ones() > 1 {
            for v in 0..n {
                let mut sub = (mask - 1) & mask;
                while sub > 0 {
                    let rest = mask ^ sub;
                    // each unordered split once
                    if sub < rest {
                        let (a, b) = (dp.cost[dp.at(sub, v)], dp.cost[dp.at(rest, v)]);
                        if a != Cost::MAX && b != Cost::MAX {
                            let at = dp.at(mask, v);
                            if a + b < dp.cost[at] {
                                dp.cost[at] = a + b;
                                dp.link[at] = Link::Split(sub);
                            }
                        }
                    }
                    sub = (sub - 1) & mask;
                }
            }
        }
        // grow along edges
        heap.clear();
        for v in 0..n {
            let c = dp.cost[dp.at(mask, v)];
            if c != Cost::MAX {
                heap.push(Reverse((c, v)));
            }
        }
        while let Some(Reverse((c, u))) = heap.pop() {
            if c > dp.cost[dp.at(mask, u)] {
                continue;
            }
            for &(w, ec) in &adj[u] {
                let at = dp.at(mask, w);
                if c + ec < dp.cost[at] {
                    dp.cost[at] = c + ec;
                    dp.link[at] = Link::Grow(u);
                    heap.push(Reverse((c + ec, w)));
                }
            }
        }
    }

    let root = compact[terms[0]];
    let optimum = dp.cost[dp.at(full, root)];
    if optimum == Cost::MAX {
        return Err(ExactError::Infeasible);
    }
    let mut edges = Vec::new();
    let mut stack = vec![(full, root)];
    while let Some((mask, v)) = stack.pop() {
        match dp.link[dp.at(mask, v)] {
            Link::Unset => unreachable!("finite entry without a link"),
            Link::Root => {}
            Link::Split(sub) => {
                stack.push((sub, v));
                stack.push((mask ^ sub, v));
            }
            Link::Grow(u) => {
                let (a, b) = (ids[u], ids[v]);
                edges.push(Edge::new(a, b, graph.edge_cost(a, b).expect("dp edge")));
                stack.push((mask, u));
            }
        }
    }
    let tree = tree_from_subgraph(terms.iter().copied(), edges, |v| instance.is_terminal(v));
    debug_assert_eq!(tree.cost(), optimum);
    Ok(tree)
}
