//! Batch runs over SteinLib files with per-instance and per-set summaries.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{exact_steiner, ExactError, MAX_TERMINALS};
use crate::graph::{validate_tree, Cost, Instance};
use crate::solve::{solve, SolveConfig, SolveError};
use crate::steinlib::{gap_percent, parse_stp, OptimaTable};

pub const CSV_HEADER: &str = "name,V,E,T,best,avg,worst,time_s,gap_pct,stdev,best_known";
pub const SUMMARY_HEADER: &str = "set,instances,optima,time_s,gap_pct";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub solve: SolveConfig,
    pub runs: usize,
    /// Use the exact solver whenever the terminal count allows it.
    pub oracle: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            solve: SolveConfig::default(),
            runs: 8,
            oracle: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub terminals: usize,
    pub best: Cost,
    pub avg: f64,
    pub worst: Cost,
    /// Mean time to best over the runs, in seconds.
    pub time_s: f64,
    pub gap_pct: Option<f64>,
    /// Population standard deviation of the run costs.
    pub stdev: f64,
    pub best_known: Option<Cost>,
    pub costs: Vec<Cost>,
    /// Full result of the cheapest run (first one on ties).
    pub best_run: Option<Value>,
}

impl RunReport {
    /// Whether the best run matched the best-known cost.
    pub fn reached_best_known(&self) -> bool {
        self.best_known.is_some_and(|b| self.best <= b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchFailure {
    pub path: PathBuf,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchOutcome {
    /// Ordered by instance name.
    pub reports: Vec<RunReport>,
    pub failures: Vec<BenchFailure>,
}

/// Mean and population standard deviation.
pub fn mean_stdev(values: &[Cost]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().map(|&c| c as f64).sum::<f64>() / n;
    let var = values.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Solves `instance` `config.runs` times with seeds `seed, seed + 1, ...`.
pub fn run_instance(
    name: &str,
    instance: &Instance,
    config: &BenchConfig,
    optima: &OptimaTable,
) -> Result<RunReport, BenchError> {
    let mut costs = Vec::with_capacity(config.runs);
    let mut times = Vec::with_capacity(config.runs);
    let mut best_run: Option<(Cost, Value)> = None;
    let exact = config.oracle && instance.terminals().len() <= MAX_TERMINALS;
    for i in 0..config.runs {
        if exact {
            let t = Instant::now();
            let s = exact_steiner(instance)?;
            debug_assert!(validate_tree(&s, instance).is_ok());
            costs.push(s.cost());
            times.push(t.elapsed());
            continue;
        }
        let mut cfg = config.solve.clone();
        cfg.vnd.seed = config.solve.vnd.seed.wrapping_add(i as u64);
        let r = solve(instance, &cfg)?;
        log::debug!("{name} run {i}: cost {} after {} descents", r.cost, r.descents);
        if best_run.as_ref().is_none_or(|(c, _)| r.cost < *c) {
            best_run = Some((r.cost, r.to_json(name, cfg.deterministic)));
        }
        costs.push(r.cost);
        times.push(r.time_to_best);
    }
    let best_known = optima.get(name).map(|b| b.cost);
    let (avg, stdev) = mean_stdev(&costs);
    let time_s = if times.is_empty() {
        0.0
    } else {
        times.iter().sum::<Duration>().as_secs_f64() / times.len() as f64
    };
    Ok(RunReport {
        name: name.to_string(),
        nodes: instance.graph().node_count(),
        edges: instance.graph().edge_count(),
        terminals: instance.terminals().len(),
        best: costs.iter().copied().min().unwrap_or(0),
        avg,
        worst: costs.iter().copied().max().unwrap_or(0),
        time_s,
        gap_pct: best_known.map(|b| gap_percent(avg, b)),
        stdev,
        best_known,
        costs,
        best_run: best_run.map(|(_, v)| v),
    })
}

/// Instance name used for reports and optima lookups: the file stem.
pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs every file; failures are collected and the rest still run.
pub fn run_benchmark(paths: &[PathBuf], config: &BenchConfig, optima: &OptimaTable) -> BenchOutcome {
    let mut out = BenchOutcome::default();
    for path in paths {
        let fail = |message: String| BenchFailure {
            path: path.clone(),
            message,
        };
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                out.failures.push(fail(e.to_string()));
                continue;
            }
        };
        let file = match parse_stp(&text) {
            Ok(f) => f,
            Err(e) => {
                out.failures.push(fail(e.to_string()));
                continue;
            }
        };
        let name = instance_name(path);
        log::info!("solving {name}");
        match run_instance(&name, &file.instance, config, optima) {
            Ok(r) => out.reports.push(r),
            Err(e) => out.failures.push(fail(e.to_string())),
        }
    }
    out.reports.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Benchmark family of an instance name: its leading letters, with the
/// hypercube, code-covering and bipartite families grouped as PUC.
pub fn test_set(name: &str) -> String {
    let prefix: String = name
        .chars()
        .take_while(|c| c.is_ascii_alphabetic())
        .collect::<String>()
        .to_ascii_uppercase();
    match prefix.as_str() {
        "HC" | "CC" | "BIP" | "BIPA" | "BIPE" => "PUC".to_string(),
        _ if prefix.is_empty() => "OTHER".to_string(),
        _ => prefix,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetSummary {
    pub set: String,
    pub instances: usize,
    /// Instances whose best run reached the best-known cost.
    pub optima: usize,
    pub time_s: f64,
    /// Mean gap over the instances with a best-known cost.
    pub gap_pct: Option<f64>,
}

pub fn summarize(reports: &[RunReport]) -> Vec<SetSummary> {
    let mut sets: BTreeMap<String, Vec<&RunReport>> = BTreeMap::new();
    for r in reports {
        sets.entry(test_set(&r.name)).or_default().push(r);
    }
    sets.into_iter()
        .map(|(set, rs)| {
            let gaps: Vec<f64> = rs.iter().filter_map(|r| r.gap_pct).collect();
            SetSummary {
                instances: rs.len(),
                optima: rs.iter().filter(|r| r.reached_best_known()).count(),
                time_s: rs.iter().map(|r| r.time_s).sum::<f64>() / rs.len() as f64,
                gap_pct: (!gaps.is_empty())
                    .then(|| round2(gaps.iter().sum::<f64>() / gaps.len() as f64)),
                set,
            }
        })
        .collect()
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Per-instance rows, a blank line, then the per-set summary. Times are left
/// empty when `deterministic` so that reruns are byte-identical.
pub fn to_csv(reports: &[RunReport], deterministic: bool) -> String {
    let time = |t: f64| {
        if deterministic {
            String::new()
        } else {
            format!("{t:.3}")
        }
    };
    let opt = |x: Option<String>| x.unwrap_or_default();
    let mut out = format!("{CSV_HEADER}\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.2},{},{},{},{:.2},{}",
            r.name,
            r.nodes,
            r.edges,
            r.terminals,
            r.best,
            r.avg,
            r.worst,
            time(r.time_s),
            opt(r.gap_pct.map(|g| format!("{g:.2}"))),
            r.stdev,
            opt(r.best_known.map(|b| b.to_string())),
        );
    }
    out.push('\n');
    let _ = writeln!(out, "{SUMMARY_HEADER}");
    for s in summarize(reports) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            s.set,
            s.instances,
            s.optima,
            time(s.time_s),
            opt(s.gap_pct.map(|g| format!("{g:.2}"))),
        );
    }
    out
}

pub fn to_json(reports: &[RunReport], deterministic: bool) -> Value {
    let strip = |mut v: Value| {
        if deterministic {
            v["time_s"] = Value::Null;
        }
        v
    };
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| strip(serde_json::to_value(r).expect("report serializes")))
        .collect();
    let sets: Vec<Value> = summarize(reports)
        .into_iter()
        .map(|s| strip(serde_json::to_value(s).expect("summary serializes")))
        .collect();
    json!({ "instances": rows, "summary": sets })
}
