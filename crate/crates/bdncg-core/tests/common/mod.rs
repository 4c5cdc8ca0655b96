//! Shared helpers for the integration suites: seeded random inputs and
//! independent brute-force oracles. The oracles never call into the solver
//! paths they are used to check.

#![allow(dead_code)]

use bdncg_core::game::{player_cost, Cost, GameSpec, StrategyProfile};
use bdncg_core::graph::Graph;
use rand::rngs::StdRng;
use rand::Rng;

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn er_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_connected_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    loop {
        let g = er_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_profile(rng: &mut StdRng, n: usize, p: f64) -> StrategyProfile {
    let mut buys = vec![Vec::new(); n];
    for (v, b) in buys.iter_mut().enumerate() {
        for w in 0..n {
            if w != v && rng.gen_bool(p) {
                b.push(w);
            }
        }
    }
    StrategyProfile::from_buys(buys).unwrap()
}

/// Calls `f` on every `k`-combination of `items` in lexicographic order
/// until `f` returns true; reports whether any call did.
pub fn for_each_combination(
    items: &[usize],
    k: usize,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() == k {
            return f(chosen);
        }
        let needed = k - chosen.len();
        for i in start..items.len() {
            if items.len() - i < needed {
                break;
            }
            chosen.push(items[i]);
            if rec(items, k, i + 1, chosen, f) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(items, k, 0, &mut Vec::new(), f)
}

/// Exhaustive minimum dominating set size by subset enumeration.
pub fn brute_min_dominating_set_size(g: &Graph) -> usize {
    let nodes: Vec<usize> = (0..g.n()).collect();
    for k in 0..=g.n() {
        let mut found = false;
        for_each_combination(&nodes, k, &mut |set| {
            let mut dominated = vec![false; g.n()];
            for &v in set {
                dominated[v] = true;
                for &u in g.neighbors(v) {
                    dominated[u] = true;
                }
            }
            found = dominated.iter().all(|&d| d);
            found
        });
        if found {
            return k;
        }
    }
    unreachable!("the full node set always dominates");
}

/// Exhaustive best response by subset enumeration in (size, lex) order:
/// returns the cost and, when finite, the lexicographically smallest
/// minimum strategy. Ground truth comes from `player_cost` on the deviated
/// profile, i.e. plain BFS.
pub fn brute_best_response(
    spec: &GameSpec,
    profile: &StrategyProfile,
    v: usize,
) -> (Cost, Option<Vec<usize>>) {
    let candidates: Vec<usize> = (0..spec.n()).filter(|&x| x != v).collect();
    for k in 0..=candidates.len() {
        let mut winner: Option<Vec<usize>> = None;
        for_each_combination(&candidates, k, &mut |set| {
            let deviated = profile.with_strategy(v, set).unwrap();
            if player_cost(spec, &deviated, v) == Cost::Finite(k as u64) {
                winner = Some(set.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(set) = winner {
            return (Cost::Finite(k as u64), Some(set));
        }
    }
    (Cost::Unbounded, None)
}

/// Exhaustive k-median cost: the smallest total distance from any
/// k-subset of centers to all nodes. Requires a connected graph.
pub fn brute_kmedian_cost(g: &Graph, k: usize) -> u64 {
    let dists: Vec<Vec<u32>> = (0..g.n())
        .map(|v| {
            let d = g.bfs(v);
            (0..g.n()).map(|u| d.get(u).unwrap()).collect()
        })
        .collect();
    let nodes: Vec<usize> = (0..g.n()).collect();
    let mut best = u64::MAX;
    for_each_combination(&nodes, k, &mut |set| {
        let cost: u64 = (0..g.n())
            .map(|u| set.iter().map(|&c| u64::from(dists[c][u])).min().unwrap())
            .sum();
        best = best.min(cost);
        false
    });
    best
}
