use crate::graph::{Cost, Instance, NodeId};

use super::tmst::{terminal_distances, TerminalDistances};
use super::{ReductionEvent, ReductionTest};

/// Removes non-terminals whose farthest terminal lies beyond `bound`: a tree
/// of cost at most `bound` holding such a node would need a longer path.
pub fn reduce_reachability(instance: &Instance, bound: Cost) -> Vec<ReductionEvent> {
    let distances = terminal_distances(instance);
    instance
        .graph()
        .nodes()
        .filter(|&v| !instance.is_terminal(v))
        .filter(|&v| distances.max_distance(v).is_none_or(|d| d > bound))
        .map(|v| ReductionEvent::node(v, ReductionTest::Reachability, Some(bound)))
        .collect()
}

/// Nearest-terminal partition of the live nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoronoiPartition {
    /// Nearest terminal and its distance; `None` if no terminal is reachable.
    pub base: Vec<Option<(NodeId, Cost)>>,
    /// Second-nearest terminal and its distance.
    pub second: Vec<Option<(NodeId, Cost)>>,
    /// `(terminal, radius)`; the radius is `None` when the region is the
    /// whole reachable graph.
    pub radius: Vec<(NodeId, Option<Cost>)>,
}

impl VoronoiPartition {
    pub fn region(&self, z: NodeId) -> Vec<NodeId> {
        self.base
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_some_and(|(t, _)| t == z))
            .map(|(v, _)| v)
            .collect()
    }

    /// Defined radii in ascending order.
    pub fn sorted_radii(&self) -> Vec<Cost> {
        let mut r: Vec<Cost> = self.radius.iter().filter_map(|&(_, r)| r).collect();
        r.sort_unstable();
        r
    }

    /// Sum of the `r - 2` smallest radii, `r` being the number of defined
    /// radii; zero when `r < 2`.
    pub fn radius_sum(&self) -> Cost {
        let r = self.sorted_radii();
        r.iter().take(r.len().saturating_sub(2)).sum()
    }

    /// `d(v, z1) + d(v, z2) + radius_sum()`, the cost every tree keeping
    /// `v` as a Steiner node must reach.
    pub fn lower_bound(&self, v: NodeId) -> Option<Cost> {
        let (_, d1) = self.base.get(v).copied().flatten()?;
        let (_, d2) = self.second.get(v).copied().flatten()?;
        Some(d1 + d2 + self.radius_sum())
    }
}

pub fn voronoi_partition(instance: &Instance) -> VoronoiPartition {
    partition_from(instance, &terminal_distances(instance))
}

fn partition_from(instance: &Instance, distances: &TerminalDistances) -> VoronoiPartition {
    let graph = instance.graph();
    let terms = distances.terminals();
    let n = graph.slots();
    let mut base = vec![None; n];
    let mut second = vec![None; n];
    for v in graph.nodes() {
        let mut first: Option<(NodeId, Cost)> = None;
        let mut next: Option<(NodeId, Cost)> = None;
        // ascending terminal ids with strict comparisons: ties go to the smaller id
        for (i, &t) in terms.iter().enumerate() {
            let Some(d) = distances.distance(i, v) else { continue };
            if first.is_none_or(|(_, fd)| d < fd) {
                next = first;
                first = Some((t, d));
            } else if next.is_none_or(|(_, nd)| d < nd) {
                next = Some((t, d));
            }
        }
        base[v] = first;
        second[v] = next;
    }
    let radius = terms
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let r = graph
                .nodes()
                .filter(|&v| base[v].is_some_and(|(b, _)| b != z))
                .filter_map(|v| distances.distance(i, v))
                .min();
            (z, r)
        })
        .collect();
    VoronoiPartition {
        base,
        second,
        radius,
    }
}

/// Removes non-terminals whose Voronoi lower bound strictly exceeds `bound`,
/// and nodes that reach no terminal at all.
pub fn reduce_voronoi(instance: &Instance, bound: Cost) -> Vec<ReductionEvent> {
    let partition = voronoi_partition(instance);
    let several = instance.terminals().len() > 1;
    instance
        .graph()
        .nodes()
        .filter(|&v| !instance.is_terminal(v))
        .filter(|&v| {
            if partition.base[v].is_none() {
                return true;
            }
            several && partition.lower_bound(v).is_some_and(|lb| lb > bound)
        })
        .map(|v| ReductionEvent::node(v, ReductionTest::Voronoi, Some(bound)))
        .collect()
}
