//! SteinLib `.stp` reading, solution text files, and the best-known-cost table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use log::warn;
use thiserror::Error;

use crate::graph::{validate_tree, Cost, Edge, Graph, Instance, NodeId, Solution, TreeViolation};

const MAGIC: &str = "33d32945";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing `33D32945 STP File` magic line")]
    MissingMagic,
    #[error("missing section `{0}`")]
    MissingSection(&'static str),
    #[error("line {line}: node {node} outside 1..={nodes}")]
    NodeOutOfRange { line: usize, node: usize, nodes: usize },
    #[error("line {line}: {what} declared as {declared} but found {found}")]
    CountMismatch {
        line: usize,
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A parsed `.stp` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StpFile {
    pub name: Option<String>,
    pub remark: Option<String>,
    pub instance: Instance,
}

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
enum Section {
    Comment,
    Graph,
    Terminals,
    Skipped,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

fn quoted_value(rest: &str) -> String {
    rest.trim().trim_matches('"').to_string()
}

/// Parses SteinLib STP text. Keywords are case-insensitive, parallel edges
/// collapse to their minimum cost and self-loops are dropped.
pub fn parse_stp(text: &str) -> Result<StpFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, l)) if l.to_ascii_lowercase().starts_with(MAGIC) => {}
        _ => return Err(ParseError::MissingMagic),
    }

    let mut name = None;
    let mut remark = None;
    let mut graph: Option<Graph> = None;
    let mut nodes = 0usize;
    let mut edges_declared: Option<usize> = None;
    let mut edges_seen = 0usize;
    let mut terminals_declared: Option<usize> = None;
    let mut terminals: Vec<NodeId> = Vec::new();
    let mut seen_graph = false;
    let mut seen_terminals = false;
    let mut section: Option<Section> = None;

    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap_or_default().to_ascii_lowercase();
        let Some(current) = section else {
            match key.as_str() {
                "section" => {
                    let which = toks.next().unwrap_or_default().to_ascii_lowercase();
                    section = Some(match which.as_str() {
                        "comment" => Section::Comment,
                        "graph" => {
                            seen_graph = true;
                            Section::Graph
                        }
                        "terminals" => {
                            seen_terminals = true;
                            Section::Terminals
                        }
                        _ => Section::Skipped,
                    });
                }
                "eof" => break,
                _ => return Err(syntax(ln, format!("expected SECTION or EOF, found `{line}`"))),
            }
            continue;
        };
        if key == "end" {
            match current {
                Section::Graph => {
                    if let Some(m) = edges_declared {
                        if edges_seen != m {
                            return Err(ParseError::CountMismatch {
                                line: ln,
                                what: "Edges",
                                declared: m,
                                found: edges_seen,
                            });
                        }
                    }
                }
                Section::Terminals => {
                    if let Some(t) = terminals_declared {
                        if terminals.len() != t {
                            return Err(ParseError::CountMismatch {
                                line: ln,
                                what: "Terminals",
                                declared: t,
                                found: terminals.len(),
                            });
                        }
                    }
                }
                _ => {}
            }
            section = None;
            continue;
        }
        match current {
            Section::Comment => {
                let rest = line[key.len()..].trim();
                match key.as_str() {
                    "name" => name = Some(quoted_value(rest)),
                    "remark" => remark = Some(quoted_value(rest)),
                    _ => {}
                }
            }
            Section::Graph => match key.as_str() {
                "nodes" => {
                    nodes = number(ln, toks.next(), "node count")?;
                    let mut g = Graph::new(nodes + 1);
                    g.remove_node(0);
                    graph = Some(g);
                }
                "edges" => edges_declared = Some(number(ln, toks.next(), "edge count")?),
                "e" => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| syntax(ln, "edge before `Nodes`"))?;
                    let a: usize = number(ln, toks.next(), "endpoint")?;
                    let b: usize = number(ln, toks.next(), "endpoint")?;
                    let w: Cost = number(ln, toks.next(), "edge cost")?;
                    for node in [a, b] {
                        if node == 0 || node > nodes {
                            return Err(ParseError::NodeOutOfRange { line: ln, node, nodes });
                        }
                    }
                    edges_seen += 1;
                    if let Some(m) = edges_declared {
                        if edges_seen > m {
                            return Err(ParseError::CountMismatch {
                                line: ln,
                                what: "Edges",
                                declared: m,
                                found: edges_seen,
                            });
                        }
                    }
                    if a == b {
                        warn!("line {ln}: dropping self-loop on node {a}");
                        continue;
                    }
                    g.add_or_min_edge(a, b, w)
                        .map_err(|e| syntax(ln, e.to_string()))?;
                }
                _ => return Err(syntax(ln, format!("unsupported graph line `{line}`"))),
            },
            Section::Terminals => match key.as_str() {
                "terminals" => terminals_declared = Some(number(ln, toks.next(), "terminal count")?),
                "t" => {
                    let t: usize = number(ln, toks.next(), "terminal")?;
                    if t == 0 || t > nodes {
                        return Err(ParseError::NodeOutOfRange { line: ln, node: t, nodes });
                    }
                    terminals.push(t);
                    if let Some(d) = terminals_declared {
                        if terminals.len() > d {
                            return Err(ParseError::CountMismatch {
                                line: ln,
                                what: "Terminals",
                                declared: d,
                                found: terminals.len(),
                            });
                        }
                    }
                }
                // root declarations and other directives are not needed
                _ => {}
            },
            Section::Skipped => {}
        }
    }

    if !seen_graph {
        return Err(ParseError::MissingSection("Graph"));
    }
    if !seen_terminals {
        return Err(ParseError::MissingSection("Terminals"));
    }
    let graph = graph.ok_or(ParseError::MissingSection("Graph"))?;
    let instance = Instance::new(graph, terminals).map_err(|e| syntax(0, e.to_string()))?;
    Ok(StpFile {
        name,
        remark,
        instance,
    })
}

/// Renders an instance back to STP text (edges sorted, terminals ascending).
pub fn write_stp(instance: &Instance, name: &str) -> String {
    let g = instance.graph();
    let nodes = g.slots().saturating_sub(1);
    let mut out = String::new();
    out.push_str("33D32945 STP File, STP Format Version 1.0\n\n");
    out.push_str("SECTION Comment\n");
    let _ = writeln!(out, "Name \"{name}\"");
    out.push_str("END\n\nSECTION Graph\n");
    let _ = writeln!(out, "Nodes {nodes}");
    let _ = writeln!(out, "Edges {}", g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "E {} {} {}", e.u, e.v, e.cost);
    }
    out.push_str("END\n\nSECTION Terminals\n");
    let _ = writeln!(out, "Terminals {}", instance.terminals().len());
    for t in instance.terminals() {
        let _ = writeln!(out, "T {t}");
    }
    out.push_str("END\n\nEOF\n");
    out
}

/// Solution file: `Name`, `Cost`, then `E u v w` per edge sorted by `(u, v)`.
pub fn write_solution(
    solution: &Solution,
    instance: &Instance,
    name: &str,
) -> Result<String, TreeViolation> {
    validate_tree(solution, instance)?;
    let mut out = String::new();
    let _ = writeln!(out, "Name {name}");
    let _ = writeln!(out, "Cost {}", solution.cost());
    for e in solution.edges() {
        let _ = writeln!(out, "E {} {} {}", e.u, e.v, e.cost);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub name: String,
    pub cost: Cost,
    pub edges: Vec<Edge>,
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let mut name = String::new();
    let mut cost = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None => {}
            Some("Name") => name = toks.collect::<Vec<_>>().join(" "),
            Some("Cost") => cost = Some(number(ln, toks.next(), "cost")?),
            Some("E") => {
                let a = number(ln, toks.next(), "endpoint")?;
                let b = number(ln, toks.next(), "endpoint")?;
                let w = number(ln, toks.next(), "edge cost")?;
                edges.push(Edge::new(a, b, w));
            }
            Some(other) => return Err(syntax(ln, format!("unexpected `{other}`"))),
        }
    }
    let cost = cost.ok_or_else(|| syntax(0, "missing `Cost` line"))?;
    Ok(SolutionFile { name, cost, edges })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OptimaError {
    #[error("line {0}: expected `name,cost,is_optimal`")]
    Malformed(usize),
    #[error("line {line}: cost `{value}` is not a positive integer")]
    BadCost { line: usize, value: String },
    #[error("line {line}: optimality flag `{value}` is not true/false")]
    BadFlag { line: usize, value: String },
    #[error("line {line}: duplicate instance `{name}`")]
    Duplicate { line: usize, name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BestKnown {
    pub cost: Cost,
    pub optimal: bool,
}

/// Best-known costs keyed by upper-cased instance name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OptimaTable {
    entries: BTreeMap<String, BestKnown>,
}

const BUNDLED_OPTIMA: &str = include_str!("../data/optima.csv");

impl OptimaTable {
    /// Best-known values for the E, TAQ and PUC hypercube instances.
    pub fn bundled() -> Self {
        load_optima(BUNDLED_OPTIMA).expect("bundled optima table is well formed")
    }

    pub fn get(&self, name: &str) -> Option<BestKnown> {
        self.entries.get(&name.to_ascii_uppercase()).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Percentage gap of `average` over the best-known cost, two decimals.
    pub fn gap(&self, name: &str, average: f64) -> Option<f64> {
        self.get(name).map(|b| gap_percent(average, b.cost))
    }

    pub fn merge(&mut self, other: OptimaTable) {
        self.entries.extend(other.entries);
    }
}

pub fn gap_percent(average: f64, best_known: Cost) -> f64 {
    let raw = (average - best_known as f64) / best_known as f64 * 100.0;
    (raw * 100.0).round() / 100.0
}

pub fn load_optima(text: &str) -> Result<OptimaTable, OptimaError> {
    let mut entries = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(OptimaError::Malformed(ln));
        }
        if ln == 1 && fields[0].eq_ignore_ascii_case("name") {
            continue;
        }
        let cost: Cost = match fields[1].parse() {
            Ok(c) if c > 0 => c,
            _ => {
                return Err(OptimaError::BadCost {
                    line: ln,
                    value: fields[1].to_string(),
                })
            }
        };
        let optimal = match fields[2].to_ascii_lowercase().as_str() {
            "true" | "1" | "yes" => true,
            "false" | "0" | "no" => false,
            _ => {
                return Err(OptimaError::BadFlag {
                    line: ln,
                    value: fields[2].to_string(),
                })
            }
        };
        let key = fields[0].to_ascii_uppercase();
        if entries.insert(key.clone(), BestKnown { cost, optimal }).is_some() {
            return Err(OptimaError::Duplicate { line: ln, name: key });
        }
    }
    Ok(OptimaTable { entries })
}
