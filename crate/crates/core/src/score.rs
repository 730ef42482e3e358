//! Per-node preference scores that steer start-node and victim selection.

use std::cmp::Ordering;
use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Instance, NodeId};

/// How the averaging window advances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowMode {
    /// A node's window grows only when its own score changes.
    #[default]
    PerNode,
    /// Every recorded outcome pushes the current score of every
    /// non-terminal, so untouched nodes drift toward their current value.
    GlobalIteration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreConfig {
    /// Fixed score of every terminal.
    pub max: i64,
    pub reward: i64,
    pub penalty: i64,
    /// Inclusive range for restart draws.
    pub restart_range: (i64, i64),
    pub window: usize,
    pub mode: WindowMode,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        ScoreConfig {
            max: 1000,
            reward: 1,
            penalty: 1,
            restart_range: (-5, 5),
            window: 10,
            mode: WindowMode::PerNode,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable {
    config: ScoreConfig,
    score: Vec<i64>,
    history: Vec<VecDeque<i64>>,
    terminal: Vec<bool>,
    restarts: usize,
}

impl ScoreTable {
    /// Terminals at the maximum, everything else neutral.
    pub fn new(instance: &Instance, config: ScoreConfig) -> Self {
        let n = instance.graph().slots();
        let terminal: Vec<bool> = (0..n).map(|v| instance.is_terminal(v)).collect();
        let score: Vec<i64> = terminal
            .iter()
            .map(|&t| if t { config.max } else { 0 })
            .collect();
        let history = score.iter().map(|&s| VecDeque::from([s])).collect();
        ScoreTable {
            config,
            score,
            history,
            terminal,
            restarts: 0,
        }
    }

    pub fn config(&self) -> &ScoreConfig {
        &self.config
    }

    pub fn score(&self, v: NodeId) -> i64 {
        self.score[v]
    }

    pub fn history(&self, v: NodeId) -> &VecDeque<i64> {
        &self.history[v]
    }

    pub fn restarts(&self) -> usize {
        self.restarts
    }

    /// Mean over the window as `(sum, count)`; terminals report the maximum.
    fn average_parts(&self, v: NodeId) -> (i64, i64) {
        if self.terminal[v] {
            return (self.config.max, 1);
        }
        let h = &self.history[v];
        (h.iter().sum(), h.len().max(1) as i64)
    }

    pub fn average(&self, v: NodeId) -> f64 {
        let (s, n) = self.average_parts(v);
        s as f64 / n as f64
    }

    /// Exact comparison of window averages.
    fn cmp_average(&self, a: NodeId, b: NodeId) -> Ordering {
        let (sa, na) = self.average_parts(a);
        let (sb, nb) = self.average_parts(b);
        (sa as i128 * nb as i128).cmp(&(sb as i128 * na as i128))
    }

    fn push(&mut self, v: NodeId) {
        let h = &mut self.history[v];
        h.push_back(self.score[v]);
        while h.len() > self.config.window {
            h.pop_front();
        }
    }

    /// Rewards (`improved`) or penalizes every listed non-terminal.
    pub fn record_outcome(&mut self, nodes: impl IntoIterator<Item = NodeId>, improved: bool) {
        let delta = if improved {
            self.config.reward
        } else {
            -self.config.penalty
        };
        let mut touched = Vec::new();
        for v in nodes {
            if self.terminal[v] {
                continue;
            }
            self.score[v] += delta;
            touched.push(v);
        }
        match self.config.mode {
            WindowMode::PerNode => {
                for v in touched {
                    self.push(v);
                }
            }
            WindowMode::GlobalIteration => {
                for v in 0..self.score.len() {
                    if !self.terminal[v] {
                        self.push(v);
                    }
                }
            }
        }
    }

    /// Up to `k` candidates by descending window average, ties by id.
    pub fn top_scored(&self, candidates: impl IntoIterator<Item = NodeId>, k: usize) -> Vec<NodeId> {
        let mut c: Vec<NodeId> = candidates.into_iter().collect();
        c.sort_unstable();
        c.dedup();
        c.sort_by(|&a, &b| self.cmp_average(b, a).then(a.cmp(&b)));
        c.truncate(k);
        c
    }

    /// Redraws every non-terminal score uniformly from the restart range.
    pub fn restart(&mut self, rng: &mut impl Rng) {
        let (lo, hi) = self.config.restart_range;
        for v in 0..self.score.len() {
            if self.terminal[v] {
                continue;
            }
            let s = rng.gen_range(lo..=hi);
            self.score[v] = s;
            self.history[v] = VecDeque::from([s]);
        }
        self.restarts += 1;
    }
}
