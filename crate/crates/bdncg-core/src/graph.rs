//! Undirected simple graphs and the distance primitives the games reduce to.
//!
//! Nodes are indices `0..n`. Graphs are immutable once constructed; edits go
//! through [`Graph::with_edges`] / [`Graph::without_edges`], which build new
//! graphs. Unreachability is always a distinguished `None`, never a large
//! finite number, so it can never silently corrupt a broadcast-cost sum.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop { node: usize },
    NodeOutOfRange { node: usize, n: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { node } => write!(f, "self-loop at node {node}"),
            GraphError::NodeOutOfRange { node, n } => {
                write!(f, "node {node} out of range for graph on {n} nodes")
            }
        }
    }
}

/// Undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges merge into one;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop { node: u });
            }
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::NodeOutOfRange { node: x, n });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Minimum degree over all nodes (0 for the empty graph).
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Breadth-first search from `source`; exact unweighted distances.
    pub fn bfs(&self, source: usize) -> DistanceVector {
        self.bfs_impl(source, None)
    }

    /// BFS from `source` where paths may not pass through `avoid`.
    /// `avoid` itself is reported unreachable. Requires `source != avoid`.
    pub fn bfs_avoiding(&self, source: usize, avoid: usize) -> DistanceVector {
        assert_ne!(source, avoid, "bfs_avoiding: source equals avoided node");
        self.bfs_impl(source, Some(avoid))
    }

    fn bfs_impl(&self, source: usize, avoid: Option<usize>) -> DistanceVector {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if Some(w) == avoid || dist[w].is_some() {
                    continue;
                }
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
        DistanceVector { source, dist }
    }

    /// Maximum distance from `v`; `None` when some node is unreachable.
    pub fn eccentricity(&self, v: usize) -> Option<u32> {
        self.bfs(v).eccentricity()
    }

    /// Sum of distances from `v`; `None` when some node is unreachable.
    pub fn broadcast_cost(&self, v: usize) -> Option<u64> {
        self.bfs(v).total()
    }

    /// Maximum eccentricity; `None` for disconnected graphs.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for v in 0..self.n() {
            best = best.max(self.eccentricity(v)?);
        }
        Some(best)
    }

    /// Minimum eccentricity; `None` for disconnected graphs.
    pub fn radius(&self) -> Option<u32> {
        let mut best = u32::MAX;
        for v in 0..self.n() {
            best = best.min(self.eccentricity(v)?);
        }
        Some(best)
    }

    /// True when every node's eccentricity equals the radius. Disconnected
    /// graphs are not self-centered (no finite eccentricities).
    pub fn is_self_centered(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        let mut first = None;
        for v in 0..self.n() {
            match (self.eccentricity(v), first) {
                (None, _) => return false,
                (Some(e), None) => first = Some(e),
                (Some(e), Some(f)) if e != f => return false,
                _ => {}
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.bfs(0).reachable_count() == self.n()
    }

    /// The `k`-th power: an edge `(u, v)` iff `1 <= d(u, v) <= k`.
    pub fn power(&self, k: u32) -> Graph {
        assert!(k >= 1, "graph power requires k >= 1");
        let mut adj = vec![Vec::new(); self.n()];
        for u in 0..self.n() {
            let d = self.bfs(u);
            for v in 0..self.n() {
                if let Some(dv) = d.get(v) {
                    if dv >= 1 && dv <= k {
                        adj[u].push(v);
                    }
                }
            }
        }
        Graph { adj }
    }

    /// Sizes of all balls of radius `k` (the ball includes its center).
    pub fn ball_profile(&self, k: u32) -> BallProfile {
        let sizes = (0..self.n())
            .map(|u| {
                self.bfs(u)
                    .iter()
                    .filter(|d| d.is_some_and(|d| d <= k))
                    .count()
            })
            .collect();
        BallProfile { radius: k, sizes }
    }

    /// New graph with the edges of `extra` added.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges = self.edges();
        edges.extend_from_slice(extra);
        Graph::from_edges(self.n(), &edges)
    }

    /// New graph with the edges of `remove` deleted (missing edges ignored).
    pub fn without_edges(&self, remove: &[(usize, usize)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in remove {
            if u < adj.len() && v < adj.len() {
                adj[u].retain(|&x| x != v);
                adj[v].retain(|&x| x != u);
            }
        }
        Graph { adj }
    }

    /// Subgraph induced by `keep`, with nodes reindexed in the order given.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![None; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = Some(i);
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges() {
            if let (Some(a), Some(b)) = (index[u], index[v]) {
                edges.push((a, b));
            }
        }
        Graph::from_edges(keep.len(), &edges).expect("induced subgraph is valid")
    }
}

/// Distances from a single BFS source. `None` marks unreachable nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceVector {
    pub source: usize,
    dist: Vec<Option<u32>>,
}

impl DistanceVector {
    pub fn get(&self, v: usize) -> Option<u32> {
        self.dist[v]
    }

    pub fn iter(&self) -> impl Iterator<Item = Option<u32>> + '_ {
        self.dist.iter().copied()
    }

    pub fn reachable_count(&self) -> usize {
        self.dist.iter().filter(|d| d.is_some()).count()
    }

    /// Maximum distance, `None` if any node is unreachable.
    pub fn eccentricity(&self) -> Option<u32> {
        let mut best = 0;
        for d in &self.dist {
            best = best.max((*d)?);
        }
        Some(best)
    }

    /// Sum of distances, `None` if any node is unreachable.
    pub fn total(&self) -> Option<u64> {
        let mut sum = 0u64;
        for d in &self.dist {
            sum += u64::from((*d)?);
        }
        Some(sum)
    }
}

/// Per-node ball sizes at a fixed radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallProfile {
    pub radius: u32,
    pub sizes: Vec<usize>,
}

impl BallProfile {
    /// The smallest ball size over all centers.
    pub fn min_size(&self) -> usize {
        self.sizes.iter().copied().min().unwrap_or(0)
    }
}
