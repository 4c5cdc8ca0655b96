//! Exact minimum set cover and dominating set, with resource budgets.
//!
//! The solver runs in two phases. Phase one finds the optimal cover size by
//! branch and bound: it branches on an uncovered element with the fewest
//! remaining covering candidates (a forced candidate is taken without
//! branching), seeded with a greedy incumbent. Phase two re-runs a
//! depth-first search in ascending candidate order to extract the
//! lexicographically smallest cover of optimal size, so results are
//! deterministic. Exceeding the budget yields [`CoverError::ResourceLimit`],
//! never a silently suboptimal answer labelled exact.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;

/// Default node-expansion cap for the exact solvers.
pub const DEFAULT_EXPANSION_BUDGET: u64 = 10_000_000;

/// Resource budget shared by the exact solvers: a node-expansion cap plus an
/// optional external stop signal (the CLI wires a wall-clock deadline here).
#[derive(Clone)]
pub struct Budget {
    pub max_expansions: u64,
    pub stop: Option<Arc<dyn Fn() -> bool + Send + Sync>>,
}

impl Budget {
    pub fn with_expansions(max_expansions: u64) -> Self {
        Budget { max_expansions, stop: None }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_expansions: DEFAULT_EXPANSION_BUDGET, stop: None }
    }
}

impl fmt::Debug for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Budget")
            .field("max_expansions", &self.max_expansions)
            .field("stop", &self.stop.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverError {
    /// Some universe element is covered by no candidate.
    Infeasible,
    /// Expansion or wall-clock budget exhausted before an exact answer.
    ResourceLimit,
}

impl fmt::Display for CoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverError::Infeasible => write!(f, "set cover infeasible"),
            CoverError::ResourceLimit => write!(f, "solver resource budget exhausted"),
        }
    }
}

/// Fixed-size bitset over universe indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn subtract(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn intersection_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

struct Solver<'a> {
    cov: Vec<Bits>,
    // for each universe element, the candidate indices covering it (ascending)
    coverers: Vec<Vec<usize>>,
    max_cov: usize,
    budget: &'a Budget,
    expansions: u64,
    best_size: usize,
}

impl<'a> Solver<'a> {
    fn tick(&mut self) -> Result<(), CoverError> {
        self.expansions += 1;
        if self.expansions > self.budget.max_expansions {
            return Err(CoverError::ResourceLimit);
        }
        if let Some(stop) = &self.budget.stop {
            if stop() {
                return Err(CoverError::ResourceLimit);
            }
        }
        Ok(())
    }

    fn lower_bound(&self, uncovered: &Bits) -> usize {
        if self.max_cov == 0 {
            return usize::MAX;
        }
        uncovered.count().div_ceil(self.max_cov)
    }

    fn greedy(&self, universe: &Bits) -> Vec<usize> {
        let mut uncovered = universe.clone();
        let mut picked = Vec::new();
        while !uncovered.is_empty() {
            let mut best = usize::MAX;
            let mut gain = 0;
            for (i, c) in self.cov.iter().enumerate() {
                let g = c.intersection_count(&uncovered);
                if g > gain {
                    gain = g;
                    best = i;
                }
            }
            debug_assert!(gain > 0, "feasibility checked before greedy");
            picked.push(best);
            uncovered.subtract(&self.cov[best]);
        }
        picked
    }

    /// Phase one: optimal size, branching on the most constrained element.
    fn min_size(&mut self, uncovered: &Bits, size: usize) -> Result<(), CoverError> {
        if uncovered.is_empty() {
            self.best_size = self.best_size.min(size);
            return Ok(());
        }
        if size + self.lower_bound(uncovered) >= self.best_size {
            return Ok(());
        }
        self.tick()?;
        let branch = uncovered
            .ones()
            .min_by_key(|&e| self.coverers[e].len())
            .expect("uncovered element exists");
        for &c in &self.coverers[branch].clone() {
            let mut rest = uncovered.clone();
            rest.subtract(&self.cov[c]);
            self.min_size(&rest, size + 1)?;
        }
        Ok(())
    }

    /// Phase two: lexicographically smallest cover of exactly the optimal
    /// size, by including candidates in ascending order. The first complete
    /// cover found is the answer.
    fn lex_extract(
        &mut self,
        cursor: usize,
        uncovered: &Bits,
        chosen: &mut Vec<usize>,
        slots: usize,
    ) -> Result<bool, CoverError> {
        if uncovered.is_empty() {
            return Ok(true);
        }
        if slots == 0 {
            return Ok(false);
        }
        // every uncovered element must still have a coverer at or past the cursor
        for e in uncovered.ones() {
            match self.coverers[e].last() {
                Some(&last) if last >= cursor => {}
                _ => return Ok(false),
            }
        }
        if self.lower_bound(uncovered) > slots {
            return Ok(false);
        }
        for c in cursor..self.cov.len() {
            if !self.cov[c].intersects(uncovered) {
                continue;
            }
            self.tick()?;
            let mut rest = uncovered.clone();
            rest.subtract(&self.cov[c]);
            chosen.push(c);
            if self.lex_extract(c + 1, &rest, chosen, slots - 1)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// Minimum-cardinality set cover. `coverage` maps candidate ids to the
/// universe elements they cover; ties between minimum covers are broken
/// lexicographically on the sorted candidate-id sequence.
pub fn min_set_cover(
    universe: &BTreeSet<usize>,
    coverage: &BTreeMap<usize, BTreeSet<usize>>,
    budget: &Budget,
) -> Result<Vec<usize>, CoverError> {
    if universe.is_empty() {
        return Ok(Vec::new());
    }
    let index: BTreeMap<usize, usize> =
        universe.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let m = universe.len();

    // keep candidates that cover at least one universe element; a minimum
    // cover never contains a useless candidate
    let mut ids = Vec::new();
    let mut cov = Vec::new();
    for (&cand, covered) in coverage {
        let mut bits = Bits::new(m);
        let mut any = false;
        for e in covered {
            if let Some(&i) = index.get(e) {
                bits.set(i);
                any = true;
            }
        }
        if any {
            ids.push(cand);
            cov.push(bits);
        }
    }

    let mut all = Bits::new(m);
    for c in &cov {
        all.union_with(c);
    }
    if all.count() != m {
        return Err(CoverError::Infeasible);
    }

    let mut coverers = vec![Vec::new(); m];
    for (ci, c) in cov.iter().enumerate() {
        for e in c.ones() {
            coverers[e].push(ci);
        }
    }
    let max_cov = cov.iter().map(Bits::count).max().unwrap_or(0);

    let mut universe_bits = Bits::new(m);
    for i in 0..m {
        universe_bits.set(i);
    }

    let mut solver = Solver {
        cov,
        coverers,
        max_cov,
        budget,
        expansions: 0,
        best_size: usize::MAX,
    };
    let incumbent = solver.greedy(&universe_bits);
    solver.best_size = incumbent.len();
    solver.min_size(&universe_bits, 0)?;

    let optimal = solver.best_size;
    let mut chosen = Vec::with_capacity(optimal);
    let found = solver.lex_extract(0, &universe_bits, &mut chosen, optimal)?;
    debug_assert!(found, "a cover of the proven optimal size must exist");
    Ok(chosen.into_iter().map(|ci| ids[ci]).collect())
}

/// Exact minimum dominating set via set cover over closed neighborhoods.
pub fn min_dominating_set(g: &Graph, budget: &Budget) -> Result<Vec<usize>, CoverError> {
    let universe: BTreeSet<usize> = (0..g.n()).collect();
    let coverage: BTreeMap<usize, BTreeSet<usize>> = (0..g.n())
        .map(|v| {
            let mut ball: BTreeSet<usize> = g.neighbors(v).iter().copied().collect();
            ball.insert(v);
            (v, ball)
        })
        .collect();
    min_set_cover(&universe, &coverage, budget)
}

/// Greedy dominating set (largest new coverage first, ties to the smallest
/// node id). Never fails; size is an upper bound on the exact minimum.
pub fn greedy_dominating_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut remaining = n;
    let mut picked = Vec::new();
    while remaining > 0 {
        let mut best = 0;
        let mut gain = 0;
        for v in 0..n {
            let mut g_v = usize::from(!dominated[v]);
            g_v += g.neighbors(v).iter().filter(|&&u| !dominated[u]).count();
            if g_v > gain {
                gain = g_v;
                best = v;
            }
        }
        picked.push(best);
        if !dominated[best] {
            dominated[best] = true;
            remaining -= 1;
        }
        for &u in g.neighbors(best) {
            if !dominated[u] {
                dominated[u] = true;
                remaining -= 1;
            }
        }
    }
    picked.sort_unstable();
    picked
}
