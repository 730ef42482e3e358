use crate::graph::{dijkstra, dijkstra_bounded, Cost, Instance, NodeId};

use super::tmst::{build_tmst, TerminalDistances};
use super::{ReduceError, ReductionEvent, ReductionTest};

/// Removes every edge strictly more expensive than the largest TMST edge.
pub fn reduce_triangle(instance: &Instance, max_tmst_edge: Option<Cost>) -> Vec<ReductionEvent> {
    let Some(limit) = max_tmst_edge else {
        return Vec::new();
    };
    instance
        .graph()
        .edges()
        .filter(|e| e.cost > limit)
        .map(|e| ReductionEvent::edge(e.u, e.v, ReductionTest::Triangle))
        .collect()
}

/// Upper estimates of special distances restricted to the `cap` nearest
/// terminals of each endpoint.
///
/// A special path runs `i -> t1 -> ... -> t2 -> j` through terminals only;
/// its bottleneck is at least the minimax distance between `t1` and `t2`,
/// which is the largest edge on their TMST path.
pub struct SpecialDistances {
    distances: TerminalDistances,
    bottleneck: Vec<Vec<Cost>>,
    // per node: (terminal position, distance), nearest first, at most `cap`
    nearest: Vec<Vec<(usize, Cost)>>,
}

impl SpecialDistances {
    pub fn new(instance: &Instance, cap: usize) -> Result<Self, ReduceError> {
        let tmst = build_tmst(instance)?;
        let bottleneck = tmst.bottleneck_table();
        let distances = tmst.distances().clone();
        let graph = instance.graph();
        let k = distances.terminals().len();
        let nearest = (0..graph.slots())
            .map(|v| {
                if !graph.is_live(v) {
                    return Vec::new();
                }
                let mut near: Vec<(Cost, usize)> = (0..k)
                    .filter_map(|i| distances.distance(i, v).map(|d| (d, i)))
                    .collect();
                // positions follow ascending terminal id, so this breaks ties by id
                near.sort_unstable();
                near.truncate(cap);
                near.into_iter().map(|(d, i)| (i, d)).collect()
            })
            .collect();
        Ok(SpecialDistances {
            distances,
            bottleneck,
            nearest,
        })
    }

    pub fn distances(&self) -> &TerminalDistances {
        &self.distances
    }

    /// Best bottleneck over special paths with at least one terminal in
    /// between (or at an end).
    pub fn via_terminals(&self, i: NodeId, j: NodeId) -> Option<Cost> {
        let mut best: Option<Cost> = None;
        for &(t1, d1) in &self.nearest[i] {
            if best.is_some_and(|b| d1 >= b) {
                break;
            }
            for &(t2, d2) in &self.nearest[j] {
                let value = d1.max(self.bottleneck[t1][t2]).max(d2);
                if best.is_none_or(|b| value < b) {
                    best = Some(value);
                }
            }
        }
        best
    }

    /// `min(d(i, j), via_terminals(i, j))`.
    pub fn estimate(&self, i: NodeId, j: NodeId, direct: Option<Cost>) -> Option<Cost> {
        match (direct, self.via_terminals(i, j)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Estimated special distance between `i` and `j`. Never below the exact
/// special distance, so removals it licenses stay valid.
pub fn special_distance(
    instance: &Instance,
    i: NodeId,
    j: NodeId,
    cap: usize,
) -> Result<Option<Cost>, ReduceError> {
    let sd = SpecialDistances::new(instance, cap)?;
    let direct = dijkstra(instance.graph(), i)?.distance(j);
    Ok(sd.estimate(i, j, direct))
}

/// Removes each edge `(i, j)` whose cost strictly exceeds the estimated
/// special distance.
pub fn reduce_special_distance(
    instance: &Instance,
    cap: usize,
) -> Result<Vec<ReductionEvent>, ReduceError> {
    let sd = SpecialDistances::new(instance, cap)?;
    let graph = instance.graph();
    let mut events = Vec::new();
    for u in graph.nodes() {
        let mut undecided = Vec::new();
        for &(v, c) in graph.neighbors(u) {
            if v < u || c == 0 {
                continue;
            }
            if sd.via_terminals(u, v).is_some_and(|s| c > s) {
                events.push(ReductionEvent::edge(u, v, ReductionTest::SpecialDistance));
            } else {
                undecided.push((v, c));
            }
        }
        // the direct distance only matters if it undercuts the edge itself
        let Some(limit) = undecided.iter().map(|&(_, c)| c - 1).max() else {
            continue;
        };
        let paths = dijkstra_bounded(graph, u, Some(limit));
        for (v, c) in undecided {
            if paths.distance(v).is_some_and(|d| d < c) {
                events.push(ReductionEvent::edge(u, v, ReductionTest::SpecialDistance));
            }
        }
    }
    events.sort_by_key(|e| e.subject);
    Ok(events)
}
