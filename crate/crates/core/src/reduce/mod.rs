//! Optimum-preserving graph reductions.
//!
//! General tests (degree, triangle, special distance) hold for every
//! instance. Bound tests (reachability, Voronoi) remove nodes that cannot
//! appear in any tree cheaper than or equal to a known feasible cost. Every
//! reduction is a pure removal, so a tree on the reduced graph is a tree on
//! the original one.

mod bound;
mod degree;
mod special;
mod tmst;

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Cost, GraphError, Instance, NodeId};

pub use bound::{reduce_reachability, reduce_voronoi, voronoi_partition, VoronoiPartition};
pub use degree::reduce_degree;
pub use special::{reduce_special_distance, reduce_triangle, special_distance, SpecialDistances};
pub use tmst::{build_tmst, terminal_distances, TerminalDistances, Tmst, TmstEdge};

pub const DEFAULT_SD_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("infeasible instance: {0}")]
    Infeasible(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionTest {
    Degree,
    Triangle,
    SpecialDistance,
    Reachability,
    Voronoi,
}

impl ReductionTest {
    pub const ALL: [ReductionTest; 5] = [
        ReductionTest::Degree,
        ReductionTest::Triangle,
        ReductionTest::SpecialDistance,
        ReductionTest::Reachability,
        ReductionTest::Voronoi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionTest::Degree => "degree",
            ReductionTest::Triangle => "triangle",
            ReductionTest::SpecialDistance => "special-distance",
            ReductionTest::Reachability => "reachability",
            ReductionTest::Voronoi => "voronoi",
        }
    }

    pub fn is_bound_based(self) -> bool {
        matches!(self, ReductionTest::Reachability | ReductionTest::Voronoi)
    }
}

impl fmt::Display for ReductionTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionTest {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReductionTest::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!(
                    "unknown reduction test `{s}` (expected one of degree, triangle, special-distance, reachability, voronoi)"
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subject {
    /// Removing a node takes its incident edges along.
    Node(NodeId),
    /// Endpoints stored smaller first.
    Edge(NodeId, NodeId),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Node(v) => write!(f, "{v}"),
            Subject::Edge(u, v) => write!(f, "{u}-{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductionEvent {
    pub subject: Subject,
    pub test: ReductionTest,
    /// Upper bound that justified a bound-based removal.
    pub bound: Option<Cost>,
}

impl ReductionEvent {
    pub fn node(v: NodeId, test: ReductionTest, bound: Option<Cost>) -> Self {
        ReductionEvent {
            subject: Subject::Node(v),
            test,
            bound,
        }
    }

    pub fn edge(a: NodeId, b: NodeId, test: ReductionTest) -> Self {
        ReductionEvent {
            subject: Subject::Edge(a.min(b), a.max(b)),
            test,
            bound: None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.subject {
            Subject::Node(_) => "node",
            Subject::Edge(..) => "edge",
        }
    }
}

/// Applies removals in order. Events whose subject is already gone are
/// skipped and reported back as `false`.
pub fn apply_event(instance: &mut Instance, event: &ReductionEvent) -> bool {
    match event.subject {
        Subject::Node(v) => {
            assert!(!instance.is_terminal(v), "terminal {v} cannot be removed");
            let live = instance.graph().is_live(v);
            instance.graph_mut().remove_node(v);
            live
        }
        Subject::Edge(a, b) => instance.graph_mut().remove_edge(a, b).is_some(),
    }
}

pub fn apply_events<'a>(
    instance: &mut Instance,
    events: impl IntoIterator<Item = &'a ReductionEvent>,
) -> usize {
    events
        .into_iter()
        .filter(|e| apply_event(instance, e))
        .count()
}

/// Ordered record of removals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLog {
    events: Vec<ReductionEvent>,
}

impl ReductionLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn events(&self) -> &[ReductionEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn push(&mut self, event: ReductionEvent) {
        self.events.push(event);
    }

    pub fn extend(&mut self, events: impl IntoIterator<Item = ReductionEvent>) {
        self.events.extend(events);
    }

    pub fn count(&self, test: ReductionTest) -> usize {
        self.events.iter().filter(|e| e.test == test).count()
    }

    /// Re-applies every event to a copy of `original`.
    pub fn replay(&self, original: &Instance) -> Instance {
        let mut inst = original.clone();
        apply_events(&mut inst, &self.events);
        inst
    }

    /// `kind,subject,test,bound` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,subject,test,bound\n");
        for e in &self.events {
            let bound = e.bound.map(|b| b.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{}", e.kind(), e.subject, e.test, bound);
        }
        out
    }
}

/// Which tests run and how far special distance looks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceConfig {
    pub disabled: Vec<ReductionTest>,
    pub sd_cap: usize,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig {
            disabled: Vec::new(),
            sd_cap: DEFAULT_SD_CAP,
        }
    }
}

impl ReduceConfig {
    pub fn enabled(&self, test: ReductionTest) -> bool {
        !self.disabled.contains(&test)
    }

    pub fn without(mut self, test: ReductionTest) -> Self {
        self.disabled.push(test);
        self
    }
}

/// One pass of the general tests: degree, triangle, special distance, each
/// applied to `instance` before the next one looks at it.
pub fn general_round(
    instance: &mut Instance,
    config: &ReduceConfig,
) -> Result<Vec<ReductionEvent>, ReduceError> {
    let mut fired = Vec::new();
    if config.enabled(ReductionTest::Degree) {
        run(instance, reduce_degree(instance), &mut fired);
    }
    if config.enabled(ReductionTest::Triangle) && instance.terminals().len() > 1 {
        let tmst = build_tmst(instance)?;
        let events = reduce_triangle(instance, tmst.max_cost());
        run(instance, events, &mut fired);
    }
    if config.enabled(ReductionTest::SpecialDistance) {
        let events = reduce_special_distance(instance, config.sd_cap)?;
        run(instance, events, &mut fired);
    }
    Ok(fired)
}

/// One pass of the bound tests at `bound`, followed by the degree test to
/// sweep up any dangling nodes.
pub fn bound_round(
    instance: &mut Instance,
    config: &ReduceConfig,
    bound: Cost,
) -> Result<Vec<ReductionEvent>, ReduceError> {
    let mut fired = Vec::new();
    if config.enabled(ReductionTest::Reachability) {
        run(instance, reduce_reachability(instance, bound), &mut fired);
    }
    if config.enabled(ReductionTest::Voronoi) {
        run(instance, reduce_voronoi(instance, bound), &mut fired);
    }
    if !fired.is_empty() && config.enabled(ReductionTest::Degree) {
        run(instance, reduce_degree(instance), &mut fired);
    }
    Ok(fired)
}

fn run(instance: &mut Instance, events: Vec<ReductionEvent>, fired: &mut Vec<ReductionEvent>) {
    for e in events {
        if apply_event(instance, &e) {
            fired.push(e);
        }
    }
}

/// Runs the general tests (and the bound tests when `bound` is given) in
/// rounds until nothing fires.
pub fn reduce_fixpoint(
    instance: &Instance,
    bound: Option<Cost>,
    config: &ReduceConfig,
) -> Result<(Instance, ReductionLog), ReduceError> {
    instance.check_feasible()?;
    let mut current = instance.clone();
    let mut log = ReductionLog::new();
    loop {
        let mut fired = general_round(&mut current, config)?;
        if let Some(b) = bound {
            fired.extend(bound_round(&mut current, config, b)?);
        }
        if fired.is_empty() {
            break;
        }
        log.extend(fired);
    }
    current.check_feasible()?;
    Ok((current, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::Edge;

    #[test]
    fn k4star_reduces_to_the_star() {
        let (reduced, log) = reduce_fixpoint(&k4star(), None, &ReduceConfig::default()).unwrap();
        let edges: Vec<Edge> = reduced.graph().edges().collect();
        assert_eq!(edges, star().edges().iter().copied().collect::<Vec<_>>());
        assert_eq!(reduced.graph().node_count(), 4);
        assert_eq!(log.len(), 3);
        assert_eq!(log.replay(&k4star()), reduced);
    }

    #[test]
    fn fixpoint_is_idempotent() {
        let (reduced, _) = reduce_fixpoint(&k4star_tail(), Some(3), &ReduceConfig::default()).unwrap();
        let (again, log) = reduce_fixpoint(&reduced, Some(3), &ReduceConfig::default()).unwrap();
        assert!(log.is_empty());
        assert_eq!(again, reduced);
    }

    #[test]
    fn disabled_tests_never_fire() {
        let mut cfg = ReduceConfig::default();
        for t in ReductionTest::ALL {
            cfg = cfg.without(t);
        }
        let (reduced, log) = reduce_fixpoint(&k4star_tail(), Some(3), &cfg).unwrap();
        assert!(log.is_empty());
        assert_eq!(reduced, k4star_tail());

        let only_sd = ReduceConfig::default()
            .without(ReductionTest::Triangle)
            .without(ReductionTest::Degree);
        let (_, log) = reduce_fixpoint(&k4star(), None, &only_sd).unwrap();
        assert!(log.events().iter().all(|e| e.test == ReductionTest::SpecialDistance));
    }

    #[test]
    fn log_csv_format() {
        let mut log = ReductionLog::new();
        log.push(ReductionEvent::node(5, ReductionTest::Reachability, Some(3)));
        log.push(ReductionEvent::edge(2, 1, ReductionTest::Triangle));
        assert_eq!(
            log.to_csv(),
            "kind,subject,test,bound\nnode,5,reachability,3\nedge,1-2,triangle,\n"
        );
    }

    #[test]
    fn test_names_round_trip() {
        for t in ReductionTest::ALL {
            assert_eq!(t.name().parse::<ReductionTest>(), Ok(t));
        }
        assert!("bogus".parse::<ReductionTest>().is_err());
    }

    #[test]
    fn infeasible_input_is_reported() {
        let g = crate::graph::Graph::from_edges(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        let inst = Instance::new(g, [0, 3]).unwrap();
        assert!(matches!(
            reduce_fixpoint(&inst, None, &ReduceConfig::default()),
            Err(ReduceError::Infeasible(_))
        ));
    }
}
