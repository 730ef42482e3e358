use crate::graph::Instance;

use super::{ReductionEvent, ReductionTest};

/// Removes non-terminals of degree 0 or 1, cascading until none is left.
pub fn reduce_degree(instance: &Instance) -> Vec<ReductionEvent> {
    let graph = instance.graph();
    let mut degree: Vec<usize> = (0..graph.slots()).map(|v| graph.degree(v)).collect();
    let mut removed = vec![false; graph.slots()];
    let mut stack: Vec<usize> = graph
        .nodes()
        .filter(|&v| degree[v] <= 1 && !instance.is_terminal(v))
        .collect();
    // pop smallest ids first among the initial candidates
    stack.reverse();
    let mut events = Vec::new();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        events.push(ReductionEvent::node(v, ReductionTest::Degree, None));
        for &(n, _) in graph.neighbors(v) {
            if removed[n] {
                continue;
            }
            degree[n] -= 1;
            if degree[n] <= 1 && !instance.is_terminal(n) {
                stack.push(n);
            }
        }
    }
    events
}
