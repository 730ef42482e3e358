//! Reducer and solver working together: a fast degree pass, a constructive
//! start, then variable neighborhood descent while the remaining reduction
//! tests run alongside and every improved bound is fed back into the
//! bound-based tests.
//!
//! Reductions reach the solver only between descent rounds. In
//! deterministic mode the reducer runs inline, one round per descent round;
//! otherwise it lives on its own thread and talks over channels.

use std::collections::BTreeMap;
use std::sync::mpsc::{self, Receiver, Sender};
use std::thread;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::construct::initial_solution;
use crate::graph::{validate_tree, Cost, GraphError, Instance, Solution};
use crate::reduce::{
    apply_event, bound_round, general_round, reduce_degree, ReduceConfig, ReduceError,
    ReductionEvent, ReductionLog, ReductionTest, Subject,
};
use crate::score::{ScoreConfig, ScoreTable};
use crate::vnd::{reconnect, vnd_descent, BoundSink, RoundAction, VndParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub vnd: VndParams,
    /// Wall-clock budget in seconds.
    pub time_limit: f64,
    pub deterministic: bool,
    pub reduce: ReduceConfig,
    pub scores: ScoreConfig,
    /// Extra descents from the incumbent once one has run dry.
    pub max_outer_restarts: usize,
    /// Consecutive descents without improvement before giving up early.
    pub stall_limit: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            vnd: VndParams::default(),
            time_limit: 60.0,
            deterministic: false,
            reduce: ReduceConfig::default(),
            scores: ScoreConfig::default(),
            max_outer_restarts: 10,
            stall_limit: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("infeasible instance: {0}")]
    Infeasible(#[from] GraphError),
    #[error("time limit must be positive, got {0}")]
    BadTimeLimit(String),
    #[error("invalid search parameters: {0}")]
    BadParams(String),
}

impl From<ReduceError> for SolveError {
    fn from(e: ReduceError) -> Self {
        match e {
            ReduceError::Infeasible(g) => SolveError::Infeasible(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRecord {
    pub cost: Cost,
    /// Time since the solve started.
    pub elapsed: Duration,
    /// The tree that established the bound.
    pub solution: Solution,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub reduce: Duration,
    pub construct: Duration,
    pub search: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    /// Best tree found; valid on the original instance.
    pub best: Solution,
    pub cost: Cost,
    pub time_to_best: Duration,
    pub log: ReductionLog,
    /// Every accepted bound, strictly decreasing.
    pub bounds: Vec<BoundRecord>,
    pub phases: PhaseTimings,
    /// Number of descents run, the first one included.
    pub descents: usize,
}

impl SolveResult {
    pub fn total_time(&self) -> Duration {
        self.phases.reduce + self.phases.construct + self.phases.search
    }

    /// JSON report. Wall-clock fields are `null` when `deterministic`, so
    /// repeated runs produce identical output.
    pub fn to_json(&self, name: &str, deterministic: bool) -> Value {
        let ms = |d: Duration| -> Value {
            if deterministic {
                Value::Null
            } else {
                json!(d.as_secs_f64() * 1000.0)
            }
        };
        let mut by_test = BTreeMap::new();
        for t in ReductionTest::ALL {
            by_test.insert(t.name(), self.log.count(t));
        }
        let edges: Vec<[Cost; 3]> = self
            .best
            .edges()
            .iter()
            .map(|e| [e.u as Cost, e.v as Cost, e.cost])
            .collect();
        json!({
            "name": name,
            "cost": self.cost,
            "edges": edges,
            "time_to_best_ms": ms(self.time_to_best),
            "bounds": self.bounds.iter().map(|b| b.cost).collect::<Vec<_>>(),
            "reductions": {
                "total": self.log.len(),
                "nodes": self.log.events().iter().filter(|e| e.kind() == "node").count(),
                "edges": self.log.events().iter().filter(|e| e.kind() == "edge").count(),
                "by_test": by_test,
            },
            "descents": self.descents,
            "phases_ms": if deterministic {
                Value::Null
            } else {
                json!({
                    "reduce": ms(self.phases.reduce),
                    "construct": ms(self.phases.construct),
                    "search": ms(self.phases.search),
                })
            },
        })
    }
}

/// Tracks the incumbent bound and which bound-test round is due next.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundSchedule {
    best: Option<Cost>,
    pending: Option<Cost>,
    scheduled: usize,
}

impl BoundSchedule {
    pub fn new() -> Self {
        Self::default()
    }

    /// Accepts `cost` only if it beats the current best; an accepted bound
    /// schedules a reachability + Voronoi round, superseding any round that
    /// has not run yet.
    pub fn submit_bound(&mut self, cost: Cost) -> bool {
        if self.best.is_some_and(|b| cost >= b) {
            return false;
        }
        self.best = Some(cost);
        self.pending = Some(cost);
        self.scheduled += 1;
        true
    }

    pub fn best(&self) -> Option<Cost> {
        self.best
    }

    /// Bound rounds scheduled so far (superseded ones included).
    pub fn scheduled(&self) -> usize {
        self.scheduled
    }

    pub fn take_pending(&mut self) -> Option<Cost> {
        self.pending.take()
    }
}

/// Solves `instance` under `config`.
pub fn solve(instance: &Instance, config: &SolveConfig) -> Result<SolveResult, SolveError> {
    if !(config.time_limit.is_finite() && config.time_limit > 0.0) {
        return Err(SolveError::BadTimeLimit(config.time_limit.to_string()));
    }
    config.vnd.validate().map_err(SolveError::BadParams)?;
    instance.check_feasible()?;
    let start = Instant::now();
    let deadline = start + Duration::from_secs_f64(config.time_limit);
    let mut phases = PhaseTimings::default();

    // phase 1: the cheap degree test
    let mut working = instance.clone();
    let mut log = ReductionLog::new();
    if config.reduce.enabled(ReductionTest::Degree) {
        for e in reduce_degree(&working) {
            if apply_event(&mut working, &e) {
                log.push(e);
            }
        }
    }
    phases.reduce = start.elapsed();

    // phase 2: constructive start, published as the first bound
    let t = Instant::now();
    let initial = initial_solution(&working)?;
    phases.construct = t.elapsed();

    // phase 3: descent with reductions alongside
    let t = Instant::now();
    let mut params = config.vnd.clone();
    params.deadline = Some(deadline);
    let mut state = SearchState::new(instance, working, initial, log, start);
    let descents = if config.deterministic {
        let mut reducer = InlineReducer::new(state.instance.clone(), config.reduce.clone());
        search(&mut state, config, &params, &mut reducer)
    } else {
        thread::scope(|scope| {
            let (bound_tx, bound_rx) = mpsc::channel::<Cost>();
            let (delta_tx, delta_rx) = mpsc::channel::<Vec<ReductionEvent>>();
            let reducer_instance = state.instance.clone();
            let reduce_config = config.reduce.clone();
            scope.spawn(move || {
                reducer_worker(reducer_instance, reduce_config, bound_rx, delta_tx)
            });
            let mut reducer = ThreadedReducer {
                bounds: Some(bound_tx),
                deltas: delta_rx,
            };
            let n = search(&mut state, config, &params, &mut reducer);
            // hang up so the worker exits
            reducer.bounds = None;
            n
        })
    };
    phases.search = t.elapsed();

    let SearchState {
        best,
        time_to_best,
        log,
        bounds,
        ..
    } = state;
    debug_assert!(validate_tree(&best, instance).is_ok());
    Ok(SolveResult {
        cost: best.cost(),
        best,
        time_to_best,
        log,
        bounds,
        phases,
        descents,
    })
}

/// Source of reduction deltas for the solver.
trait Reducer {
    /// A new incumbent cost.
    fn bound(&mut self, cost: Cost);
    /// Deltas ready to apply at this round boundary, in order.
    fn deltas(&mut self) -> Vec<ReductionEvent>;
}

/// Runs one reducer round per call to `deltas`: the general tests once, then
/// the bound tests on the latest pending bound.
struct InlineReducer {
    instance: Instance,
    config: ReduceConfig,
    general_done: bool,
    schedule: BoundSchedule,
}

impl InlineReducer {
    fn new(instance: Instance, config: ReduceConfig) -> Self {
        InlineReducer {
            instance,
            config,
            general_done: false,
            schedule: BoundSchedule::new(),
        }
    }
}

impl Reducer for InlineReducer {
    fn bound(&mut self, cost: Cost) {
        self.schedule.submit_bound(cost);
    }

    fn deltas(&mut self) -> Vec<ReductionEvent> {
        let mut out = Vec::new();
        if !self.general_done {
            self.general_done = true;
            // the instance was feasible on entry and removals keep it so
            out.extend(general_round(&mut self.instance, &self.config).unwrap_or_default());
        }
        if let Some(b) = self.schedule.take_pending() {
            out.extend(bound_round(&mut self.instance, &self.config, b).unwrap_or_default());
        }
        out
    }
}

struct ThreadedReducer {
    bounds: Option<Sender<Cost>>,
    deltas: Receiver<Vec<ReductionEvent>>,
}

impl Reducer for ThreadedReducer {
    fn bound(&mut self, cost: Cost) {
        if let Some(tx) = &self.bounds {
            let _ = tx.send(cost);
        }
    }

    fn deltas(&mut self) -> Vec<ReductionEvent> {
        self.deltas.try_iter().flatten().collect()
    }
}

fn reducer_worker(
    mut instance: Instance,
    config: ReduceConfig,
    bounds: Receiver<Cost>,
    deltas: Sender<Vec<ReductionEvent>>,
) {
    let mut schedule = BoundSchedule::new();
    let fired = general_round(&mut instance, &config).unwrap_or_default();
    if !fired.is_empty() && deltas.send(fired).is_err() {
        return;
    }
    while let Ok(first) = bounds.recv() {
        schedule.submit_bound(first);
        // only the tightest of any queued bounds matters
        for b in bounds.try_iter() {
            schedule.submit_bound(b);
        }
        let Some(b) = schedule.take_pending() else { continue };
        let fired = bound_round(&mut instance, &config, b).unwrap_or_default();
        if !fired.is_empty() && deltas.send(fired).is_err() {
            return;
        }
    }
}

/// Solver-side state shared by both reducer flavors.
struct SearchState<'a> {
    original: &'a Instance,
    /// The solver's view of the reduced graph.
    instance: Instance,
    best: Solution,
    time_to_best: Duration,
    log: ReductionLog,
    bounds: Vec<BoundRecord>,
    start: Instant,
}

impl<'a> SearchState<'a> {
    fn new(
        original: &'a Instance,
        instance: Instance,
        initial: Solution,
        log: ReductionLog,
        start: Instant,
    ) -> Self {
        let elapsed = start.elapsed();
        SearchState {
            original,
            instance,
            bounds: vec![BoundRecord {
                cost: initial.cost(),
                elapsed,
                solution: initial.clone(),
            }],
            best: initial,
            time_to_best: elapsed,
            log,
            start,
        }
    }

    /// Records `s` if it is a valid tree strictly cheaper than the best.
    fn offer(&mut self, s: &Solution) -> bool {
        if s.cost() >= self.best.cost() || validate_tree(s, self.original).is_err() {
            return false;
        }
        self.best = s.clone();
        self.time_to_best = self.start.elapsed();
        self.bounds.push(BoundRecord {
            cost: s.cost(),
            elapsed: self.time_to_best,
            solution: s.clone(),
        });
        true
    }

    /// Applies reducer deltas. Returns whether the graph changed.
    fn apply(&mut self, deltas: Vec<ReductionEvent>) -> bool {
        let mut changed = false;
        for e in deltas {
            if e.test.is_bound_based() && self.best.lives_in(self.instance.graph()) {
                if let Subject::Node(v) = e.subject {
                    assert!(
                        !self.best.contains_node(v),
                        "{} test removed node {v} of the incumbent",
                        e.test
                    );
                }
            }
            if apply_event(&mut self.instance, &e) {
                self.log.push(e);
                changed = true;
            }
        }
        changed
    }

    /// A tree on the current graph: `preferred` if it survived, otherwise
    /// the incumbent, otherwise `preferred` reconnected around the removals.
    fn adopt(&self, preferred: &Solution, params: &VndParams, rng: &mut ChaCha8Rng) -> Solution {
        let graph = self.instance.graph();
        if preferred.lives_in(graph) {
            return preferred.clone();
        }
        if self.best.lives_in(graph) {
            return self.best.clone();
        }
        let edges = preferred
            .edges()
            .iter()
            .copied()
            .filter(|e| graph.has_edge(e.u, e.v));
        let nodes = preferred.nodes().iter().copied().filter(|&v| graph.is_live(v));
        let partial = Solution::from_edges(edges, nodes);
        reconnect(&self.instance, &partial, params, rng)
            .ok()
            .or_else(|| initial_solution(&self.instance).ok())
            .expect("reductions keep the instance feasible")
    }
}

/// Bridges one descent to the solver state and the reducer.
struct Sink<'s, 'a, R: Reducer> {
    state: &'s mut SearchState<'a>,
    reducer: &'s mut R,
    params: &'s VndParams,
    rng: ChaCha8Rng,
    improved: bool,
}

impl<R: Reducer> BoundSink for Sink<'_, '_, R> {
    fn publish(&mut self, solution: &Solution) {
        if self.state.offer(solution) {
            self.improved = true;
            self.reducer.bound(solution.cost());
        }
    }

    fn round_boundary(&mut self, current: &Solution) -> RoundAction {
        let deltas = self.reducer.deltas();
        if deltas.is_empty() || !self.state.apply(deltas) {
            return RoundAction::Continue;
        }
        let current = self.state.adopt(current, self.params, &mut self.rng);
        RoundAction::Replace {
            instance: self.state.instance.clone(),
            current,
        }
    }
}

/// Descents until the restart budget, the stall limit or the deadline runs
/// out. Returns the number of descents.
fn search<R: Reducer>(
    state: &mut SearchState<'_>,
    config: &SolveConfig,
    params: &VndParams,
    reducer: &mut R,
) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    // separate stream for repairs so they do not shift the search sequence
    let mut repair_rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut scores = ScoreTable::new(&state.instance, config.scores.clone());
    reducer.bound(state.best.cost());
    let mut descents = 0;
    let mut stalled = 0;
    loop {
        let expired = params.deadline.is_some_and(|d| Instant::now() >= d);
        if expired || descents > config.max_outer_restarts || stalled >= config.stall_limit {
            break;
        }
        if descents > 0 {
            scores.restart(&mut rng);
        }
        let start = state.adopt(&state.best.clone(), params, &mut repair_rng);
        let instance = state.instance.clone();
        let mut sink = Sink {
            state,
            reducer,
            params,
            rng: repair_rng.clone(),
            improved: false,
        };
        vnd_descent(&instance, &start, params, &mut scores, &mut rng, &mut sink);
        let improved = sink.improved;
        repair_rng = sink.rng;
        descents += 1;
        stalled = if improved { 0 } else { stalled + 1 };
    }
    // late deltas still belong in the log
    let late = reducer.deltas();
    state.apply(late);
    descents
}
