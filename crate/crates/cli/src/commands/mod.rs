pub mod bench;
pub mod replay;
pub mod solve;
pub mod validate;

use std::fmt::Write as _;

use sokoban_core::search::Metrics;

/// Metric lines printed after a solve outcome.
pub(crate) fn metrics_report(strategy: &str, m: &Metrics, informed: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "strategy: {strategy}");
    let _ = writeln!(out, "elapsed: {:.2} s", m.elapsed_secs());
    let _ = writeln!(out, "nodes expanded: {}", m.nodes_expanded);
    let _ = writeln!(out, "frontier peak: {}", m.frontier_peak);
    if informed {
        let _ = writeln!(out, "reopened: {}", m.reopened);
    }
    out
}

pub(crate) fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}
