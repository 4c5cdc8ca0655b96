//! Graph exports (DOT, edge list) and graph inputs for the generators that
//! take one (gadget, reductions).
//!
//! The DOT export draws the undirected graph with an arrow attribute per
//! edge: the arrow exits the buying node (`dir=forward` from the owner,
//! `dir=both` when both endpoints bought the edge).
//!
//! Edge-list files: optional `#` comments, an `n <count>` header line, then
//! one `u v` pair per line.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use bdncg_core::game::StrategyProfile;
use bdncg_core::graph::Graph;

use crate::format::load_instance;

pub fn to_dot(profile: &StrategyProfile) -> String {
    let mut out = String::from("graph bdncg {\n");
    let n = profile.n();
    for v in 0..n {
        out.push_str(&format!("  {v};\n"));
    }
    for v in 0..n {
        for &u in profile.buys(v) {
            let mutual = profile.buys(u).contains(&v);
            if mutual && u < v {
                continue; // emitted once from the lower endpoint
            }
            let dir = if mutual { "both" } else { "forward" };
            out.push_str(&format!("  {v} -- {u} [dir={dir}];\n"));
        }
    }
    out.push_str("}\n");
    out
}

pub fn to_edgelist(graph: &Graph) -> String {
    let mut out = format!("n {}\n", graph.n());
    for (u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn edgelist_from_str(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some("n"), Some(count), None) => {
                n = Some(count.parse().with_context(|| format!("line {}", lineno + 1))?);
            }
            (Some(a), Some(b), None) => {
                let u: usize = a.parse().with_context(|| format!("line {}", lineno + 1))?;
                let v: usize = b.parse().with_context(|| format!("line {}", lineno + 1))?;
                edges.push((u, v));
            }
            _ => bail!("line {}: expected `n <count>` or `u v`", lineno + 1),
        }
    }
    let n = match n {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Graph::from_edges(n, &edges).map_err(|e| anyhow::anyhow!("{e}"))
}

/// Loads a graph from either an instance file (`.json`, the induced graph of
/// its profile) or an edge-list file.
pub fn load_graph(path: &Path) -> Result<Graph> {
    if path.extension().is_some_and(|e| e == "json") {
        Ok(load_instance(path)?.profile.build_graph())
    } else {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        edgelist_from_str(&text)
    }
}
