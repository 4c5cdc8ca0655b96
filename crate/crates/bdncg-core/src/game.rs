//! Strategy profiles, player costs, exact best responses for both variants,
//! and equilibrium verification.
//!
//! A strategy profile assigns each player `v` a set of nodes it buys edges
//! towards. Double purchases of the same edge (by both endpoints) are allowed
//! in raw profiles and merge into one edge in the induced graph, but both
//! purchases count in the social cost.
//!
//! The max-variant best response reduces to minimum set cover: the universe
//! is every node farther than `R_v` from `v` once `v`'s own purchases are
//! dropped, and a candidate `x` covers the universe nodes it reaches within
//! `R_v - 1` hops on paths that do not pass through `v`. Excluding `v` as an
//! intermediate makes the cover formulation exactly equivalent to the BFS
//! definition of feasibility; the equivalence is exercised by tests. The
//! sum-variant best response runs iterative deepening over the strategy size
//! with branch and bound; a greedy plus one-swap local search provides the
//! upper bound, and an optimistic distance profile over all remaining
//! candidates provides admissible pruning.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cover::{min_set_cover, Budget, CoverError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Max,
    Sum,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Max => write!(f, "max"),
            Variant::Sum => write!(f, "sum"),
        }
    }
}

/// A player cost: the number of bought edges when the player is within its
/// distance bound, unbounded otherwise. `Finite(_) < Unbounded`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cost {
    Finite(u64),
    Unbounded,
}

impl Cost {
    pub fn finite(self) -> Option<u64> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::Unbounded => None,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(c) => write!(f, "{c}"),
            Cost::Unbounded => write!(f, "unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    EmptyGame,
    ZeroBound { player: usize },
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::EmptyGame => write!(f, "game needs at least one player"),
            SpecError::ZeroBound { player } => {
                write!(f, "player {player} has a zero distance bound")
            }
        }
    }
}

/// Game variant plus per-player distance bounds (`R_v` for max, broadcast
/// bound `B_v` for sum). Bounds are positive integers; sum bounds below
/// `n - 1` make any connected outcome infeasible (reported, not rejected).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    variant: Variant,
    bounds: Vec<u64>,
}

impl GameSpec {
    pub fn new(variant: Variant, bounds: Vec<u64>) -> Result<Self, SpecError> {
        if bounds.is_empty() {
            return Err(SpecError::EmptyGame);
        }
        if let Some(player) = bounds.iter().position(|&b| b == 0) {
            return Err(SpecError::ZeroBound { player });
        }
        Ok(GameSpec { variant, bounds })
    }

    pub fn uniform(variant: Variant, n: usize, bound: u64) -> Result<Self, SpecError> {
        Self::new(variant, vec![bound; n])
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.bounds.len()
    }

    pub fn bound(&self, v: usize) -> u64 {
        self.bounds[v]
    }

    pub fn bounds(&self) -> &[u64] {
        &self.bounds
    }

    pub fn is_uniform(&self) -> bool {
        self.bounds.iter().all(|&b| b == self.bounds[0])
    }

    pub fn uniform_bound(&self) -> Option<u64> {
        self.is_uniform().then(|| self.bounds[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileError {
    SelfPurchase { player: usize },
    TargetOutOfRange { player: usize, target: usize },
}

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileError::SelfPurchase { player } => {
                write!(f, "player {player} buys an edge to itself")
            }
            ProfileError::TargetOutOfRange { player, target } => {
                write!(f, "player {player} buys an edge to out-of-range node {target}")
            }
        }
    }
}

/// Per-player bought-edge sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StrategyProfile {
    buys: Vec<BTreeSet<usize>>,
}

impl StrategyProfile {
    pub fn empty(n: usize) -> Self {
        StrategyProfile { buys: vec![BTreeSet::new(); n] }
    }

    pub fn from_buys(buys: Vec<Vec<usize>>) -> Result<Self, ProfileError> {
        let n = buys.len();
        let mut sets = Vec::with_capacity(n);
        for (player, list) in buys.into_iter().enumerate() {
            let mut set = BTreeSet::new();
            for target in list {
                if target == player {
                    return Err(ProfileError::SelfPurchase { player });
                }
                if target >= n {
                    return Err(ProfileError::TargetOutOfRange { player, target });
                }
                set.insert(target);
            }
            sets.push(set);
        }
        Ok(StrategyProfile { buys: sets })
    }

    pub fn n(&self) -> usize {
        self.buys.len()
    }

    pub fn buys(&self, v: usize) -> &BTreeSet<usize> {
        &self.buys[v]
    }

    /// Total number of purchases over all players (double-bought edges count
    /// twice); equals the social cost when every player is within its bound.
    pub fn total_purchases(&self) -> u64 {
        self.buys.iter().map(|s| s.len() as u64).sum()
    }

    /// New profile where `v` plays `strategy` and everyone else is unchanged.
    pub fn with_strategy(&self, v: usize, strategy: &[usize]) -> Result<Self, ProfileError> {
        let mut out = self.clone();
        let mut set = BTreeSet::new();
        for &target in strategy {
            if target == v {
                return Err(ProfileError::SelfPurchase { player: v });
            }
            if target >= self.n() {
                return Err(ProfileError::TargetOutOfRange { player: v, target });
            }
            set.insert(target);
        }
        out.buys[v] = set;
        Ok(out)
    }

    /// The profile where `v` buys nothing; edges bought by others towards `v`
    /// are retained.
    pub fn drop_player(&self, v: usize) -> Self {
        let mut out = self.clone();
        out.buys[v].clear();
        out
    }

    /// The induced undirected graph: the union of all purchases, with
    /// double-bought edges merged.
    pub fn build_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for (v, set) in self.buys.iter().enumerate() {
            for &u in set {
                edges.push((v, u));
            }
        }
        Graph::from_edges(self.n(), &edges).expect("profile invariants guarantee a simple graph")
    }
}

/// Player `v`'s cost under `profile`: `|S_v|` if within its distance bound
/// (max: eccentricity at most `R_v`; sum: broadcast cost at most `B_v`),
/// unbounded otherwise.
pub fn player_cost(spec: &GameSpec, profile: &StrategyProfile, v: usize) -> Cost {
    let g = profile.build_graph();
    player_cost_in(spec, profile, &g, v)
}

fn player_cost_in(spec: &GameSpec, profile: &StrategyProfile, g: &Graph, v: usize) -> Cost {
    let within = match spec.variant() {
        Variant::Max => g.eccentricity(v).is_some_and(|e| u64::from(e) <= spec.bound(v)),
        Variant::Sum => g.broadcast_cost(v).is_some_and(|b| b <= spec.bound(v)),
    };
    if within {
        Cost::Finite(profile.buys(v).len() as u64)
    } else {
        Cost::Unbounded
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrStatus {
    /// No strictly smaller feasible strategy exists.
    Exact,
    /// Budget exhausted; the strategy is feasible but maybe not minimum.
    HeuristicUpperBound,
    /// Even buying all `n - 1` edges violates the bound.
    Infeasible,
}

/// A best response for one player: a minimum-cardinality strategy (ties
/// broken to the lexicographically smallest node set) plus its certificate
/// status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    pub player: usize,
    pub strategy: Vec<usize>,
    pub cost: Cost,
    pub status: BrStatus,
}

/// Exact best response in the max variant via minimum set cover.
pub fn best_response_max(
    spec: &GameSpec,
    profile: &StrategyProfile,
    v: usize,
    budget: &Budget,
) -> Result<BestResponse, CoverError> {
    assert_eq!(spec.variant(), Variant::Max);
    let n = spec.n();
    let r = spec.bound(v);
    let dropped = profile.drop_player(v);
    let h = dropped.build_graph();

    let from_v = h.bfs(v);
    let universe: BTreeSet<usize> = (0..n)
        .filter(|&u| u != v)
        .filter(|&u| from_v.get(u).is_none_or(|d| u64::from(d) > r))
        .collect();
    if universe.is_empty() {
        return Ok(BestResponse {
            player: v,
            strategy: Vec::new(),
            cost: Cost::Finite(0),
            status: BrStatus::Exact,
        });
    }

    let coverage = (0..n)
        .filter(|&x| x != v)
        .map(|x| {
            let d = h.bfs_avoiding(x, v);
            let covered = universe
                .iter()
                .copied()
                .filter(|&u| d.get(u).is_some_and(|du| u64::from(du) < r))
                .collect::<BTreeSet<usize>>();
            (x, covered)
        })
        .collect();
    let strategy = min_set_cover(&universe, &coverage, budget)?;

    // re-verify feasibility against the BFS ground truth
    let deviated = profile.with_strategy(v, &strategy).expect("cover candidates are valid");
    let cost = player_cost(spec, &deviated, v);
    assert_eq!(
        cost,
        Cost::Finite(strategy.len() as u64),
        "cover solution must be feasible for player {v}"
    );
    Ok(BestResponse { player: v, strategy, cost, status: BrStatus::Exact })
}

const INF: u64 = u64::MAX;

/// Distance profile summary for the sum-variant search.
#[derive(Clone, Copy)]
struct Eval {
    unreachable: usize,
    total: u64,
}

impl Eval {
    fn feasible(&self, bound: u64) -> bool {
        self.unreachable == 0 && self.total <= bound
    }
}

struct SumSearch<'a> {
    bound: u64,
    // via[j][u]: distance from v to u when the first hop is candidate j
    via: Vec<Vec<u64>>,
    // suffix[j][u]: best via over candidates j.. (suffix[len] is all INF)
    suffix: Vec<Vec<u64>>,
    cand: Vec<usize>,
    budget: &'a Budget,
    expansions: u64,
}

impl<'a> SumSearch<'a> {
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

    fn eval(cur: &[u64]) -> Eval {
        let mut e = Eval { unreachable: 0, total: 0 };
        for &d in cur {
            if d == INF {
                e.unreachable += 1;
            } else {
                e.total += d;
            }
        }
        e
    }

    /// Depth-first search for a feasible strategy of exactly `slots` more
    /// purchases, candidates taken in ascending order so the first hit is
    /// lexicographically smallest.
    fn dfs(
        &mut self,
        cursor: usize,
        cur: &mut Vec<u64>,
        chosen: &mut Vec<usize>,
        slots: usize,
    ) -> Result<bool, CoverError> {
        if Self::eval(cur).feasible(self.bound) {
            return Ok(true);
        }
        if slots == 0 {
            return Ok(false);
        }
        // optimistic completion: take every remaining candidate at once
        let opt = &self.suffix[cursor];
        let mut best = Eval { unreachable: 0, total: 0 };
        for (u, &d) in cur.iter().enumerate() {
            let o = d.min(opt[u]);
            if o == INF {
                best.unreachable += 1;
            } else {
                best.total += o;
            }
        }
        if !best.feasible(self.bound) {
            return Ok(false);
        }
        for j in cursor..self.cand.len() {
            let gain = cur.iter().zip(&self.via[j]).any(|(&c, &w)| w < c);
            if !gain {
                continue;
            }
            self.tick()?;
            let saved: Vec<(usize, u64)> = cur
                .iter()
                .enumerate()
                .filter(|&(u, &c)| self.via[j][u] < c)
                .map(|(u, &c)| (u, c))
                .collect();
            for &(u, _) in &saved {
                cur[u] = self.via[j][u];
            }
            chosen.push(self.cand[j]);
            if self.dfs(j + 1, cur, chosen, slots - 1)? {
                return Ok(true);
            }
            chosen.pop();
            for &(u, old) in &saved {
                cur[u] = old;
            }
        }
        Ok(false)
    }
}

/// Exact best response in the sum variant: iterative deepening over the
/// strategy size, greedy-plus-one-swap upper bound, admissible pruning.
pub fn best_response_sum(
    spec: &GameSpec,
    profile: &StrategyProfile,
    v: usize,
    budget: &Budget,
) -> Result<BestResponse, CoverError> {
    assert_eq!(spec.variant(), Variant::Sum);
    let n = spec.n();
    let b = spec.bound(v);
    if n >= 2 && (n as u64 - 1) > b {
        // even buying every edge leaves the broadcast cost at n - 1
        return Ok(BestResponse {
            player: v,
            strategy: Vec::new(),
            cost: Cost::Unbounded,
            status: BrStatus::Infeasible,
        });
    }

    let dropped = profile.drop_player(v);
    let h = dropped.build_graph();
    let cand: Vec<usize> = (0..n).filter(|&x| x != v).collect();

    // distance from v to u when the first hop is x, on paths avoiding v
    let mut via = Vec::with_capacity(cand.len());
    for &x in &cand {
        let d = h.bfs_avoiding(x, v);
        let row: Vec<u64> = cand
            .iter()
            .map(|&u| d.get(u).map_or(INF, |du| u64::from(du) + 1))
            .collect();
        via.push(row);
    }

    // base profile: neighbors bought towards v stay in place
    let mut base = vec![INF; cand.len()];
    for (j, &x) in cand.iter().enumerate() {
        if h.has_edge(v, x) {
            for (u, d) in base.iter_mut().zip(&via[j]) {
                *u = (*u).min(*d);
            }
        }
    }

    if SumSearch::eval(&base).feasible(b) {
        return Ok(BestResponse {
            player: v,
            strategy: Vec::new(),
            cost: Cost::Finite(0),
            status: BrStatus::Exact,
        });
    }

    // greedy upper bound: score unreachable nodes as distance n + 1
    let virt = |d: u64| if d == INF { n as u64 + 1 } else { d };
    let mut greedy: Vec<usize> = Vec::new();
    let mut cur = base.clone();
    while !SumSearch::eval(&cur).feasible(b) {
        let mut best_j = usize::MAX;
        let mut best_gain = 0u64;
        for (j, row) in via.iter().enumerate() {
            if greedy.contains(&j) {
                continue;
            }
            let gain: u64 = cur
                .iter()
                .zip(row)
                .map(|(&c, &w)| virt(c).saturating_sub(virt(c.min(w))))
                .sum();
            if gain > best_gain {
                best_gain = gain;
                best_j = j;
            }
        }
        debug_assert!(best_j != usize::MAX, "buying all edges is always feasible here");
        greedy.push(best_j);
        for (u, d) in cur.iter_mut().zip(&via[best_j]) {
            *u = (*u).min(*d);
        }
    }
    greedy = shrink_sum_strategy(&via, &base, greedy, b);
    // one-swap pass: a swap is kept only when it lets the set shrink
    'swap: loop {
        for out_pos in 0..greedy.len() {
            for j in 0..via.len() {
                if greedy.contains(&j) {
                    continue;
                }
                let mut trial = greedy.clone();
                trial[out_pos] = j;
                if sum_eval_of(&via, &base, &trial).feasible(b) {
                    let trial = shrink_sum_strategy(&via, &base, trial, b);
                    if trial.len() < greedy.len() {
                        greedy = trial;
                        continue 'swap;
                    }
                }
            }
        }
        break;
    }

    let mut suffix = vec![vec![INF; cand.len()]; cand.len() + 1];
    for j in (0..cand.len()).rev() {
        for u in 0..cand.len() {
            suffix[j][u] = suffix[j + 1][u].min(via[j][u]);
        }
    }

    let mut search = SumSearch { bound: b, via, suffix, cand, budget, expansions: 0 };
    for k in 0..=greedy.len() {
        let mut cur = base.clone();
        let mut chosen = Vec::with_capacity(k);
        match search.dfs(0, &mut cur, &mut chosen, k) {
            Ok(true) => {
                let deviated =
                    profile.with_strategy(v, &chosen).expect("candidates are valid targets");
                let cost = player_cost(spec, &deviated, v);
                assert_eq!(cost, Cost::Finite(chosen.len() as u64));
                return Ok(BestResponse {
                    player: v,
                    strategy: chosen,
                    cost,
                    status: BrStatus::Exact,
                });
            }
            Ok(false) => {}
            Err(CoverError::ResourceLimit) => {
                // greedy already proved feasibility of its own strategy
                let strategy: Vec<usize> =
                    greedy.iter().map(|&j| search.cand[j]).collect();
                let cost = Cost::Finite(strategy.len() as u64);
                return Ok(BestResponse {
                    player: v,
                    strategy,
                    cost,
                    status: BrStatus::HeuristicUpperBound,
                });
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("iterative deepening reaches the greedy upper bound");
}

fn sum_eval_of(via: &[Vec<u64>], base: &[u64], chosen: &[usize]) -> Eval {
    let mut cur = base.to_vec();
    for &j in chosen {
        for (u, d) in cur.iter_mut().zip(&via[j]) {
            *u = (*u).min(*d);
        }
    }
    SumSearch::eval(&cur)
}

/// Removal pass to a fixpoint: drop any member whose removal stays feasible.
fn shrink_sum_strategy(
    via: &[Vec<u64>],
    base: &[u64],
    mut chosen: Vec<usize>,
    bound: u64,
) -> Vec<usize> {
    loop {
        let mut removed = false;
        for pos in 0..chosen.len() {
            let mut trial = chosen.clone();
            trial.remove(pos);
            if sum_eval_of(via, base, &trial).feasible(bound) {
                chosen = trial;
                removed = true;
                break;
            }
        }
        if !removed {
            return chosen;
        }
    }
}

/// Best response dispatching on the game variant.
pub fn best_response(
    spec: &GameSpec,
    profile: &StrategyProfile,
    v: usize,
    budget: &Budget,
) -> Result<BestResponse, CoverError> {
    match spec.variant() {
        Variant::Max => best_response_max(spec, profile, v, budget),
        Variant::Sum => best_response_sum(spec, profile, v, budget),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    Unstable,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Stable => write!(f, "STABLE"),
            Verdict::Unstable => write!(f, "UNSTABLE"),
            Verdict::Unknown => write!(f, "UNKNOWN"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerReport {
    pub player: usize,
    pub current_cost: Cost,
    /// `None` when the solver hit its resource budget for this player.
    pub best_cost: Option<Cost>,
    pub best_status: Option<BrStatus>,
    /// A strategy strictly cheaper than the current one, when one was found.
    pub improving_deviation: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub players: Vec<PlayerReport>,
    pub social_cost: Cost,
    pub verdict: Verdict,
}

/// Per-player equilibrium record; independent across players, safe to run in
/// parallel over immutable inputs.
pub fn player_report(
    spec: &GameSpec,
    profile: &StrategyProfile,
    v: usize,
    budget: &Budget,
) -> PlayerReport {
    let current_cost = player_cost(spec, profile, v);
    if current_cost == Cost::Finite(0) {
        // nothing bought and within bound: already a best response
        return PlayerReport {
            player: v,
            current_cost,
            best_cost: Some(Cost::Finite(0)),
            best_status: Some(BrStatus::Exact),
            improving_deviation: None,
        };
    }
    match best_response(spec, profile, v, budget) {
        Ok(br) => {
            let improving = br.cost < current_cost;
            PlayerReport {
                player: v,
                current_cost,
                best_cost: Some(br.cost),
                best_status: Some(br.status),
                improving_deviation: improving.then_some(br.strategy),
            }
        }
        Err(_) => PlayerReport {
            player: v,
            current_cost,
            best_cost: None,
            best_status: None,
            improving_deviation: None,
        },
    }
}

/// Assembles a verdict from per-player reports. A report with an improving
/// deviation settles instability regardless of other players; a player whose
/// solver was cut off (or whose heuristic answer cannot certify optimality)
/// downgrades a would-be stable verdict to unknown, never to stable.
pub fn assemble_report(reports: Vec<PlayerReport>) -> EquilibriumReport {
    let mut social = Some(0u64);
    let mut improving = false;
    let mut unknown = false;
    for r in &reports {
        match r.current_cost {
            Cost::Finite(c) => social = social.map(|s| s + c),
            Cost::Unbounded => social = None,
        }
        if r.improving_deviation.is_some() {
            improving = true;
        } else {
            match (r.best_cost, r.best_status) {
                (Some(_), Some(BrStatus::Exact)) | (Some(_), Some(BrStatus::Infeasible)) => {}
                _ => unknown = true,
            }
        }
    }
    let verdict = if improving {
        Verdict::Unstable
    } else if unknown {
        Verdict::Unknown
    } else {
        Verdict::Stable
    };
    EquilibriumReport {
        players: reports,
        social_cost: social.map_or(Cost::Unbounded, Cost::Finite),
        verdict,
    }
}

/// Verifies whether `profile` is a Nash equilibrium by exact per-player best
/// responses. The verdict is stable only when every player's current cost
/// equals its exact best-response cost; a resource-limited player yields an
/// unknown verdict, never a stable one.
pub fn is_equilibrium(
    spec: &GameSpec,
    profile: &StrategyProfile,
    budget: &Budget,
) -> EquilibriumReport {
    let reports = (0..spec.n()).map(|v| player_report(spec, profile, v, budget)).collect();
    assemble_report(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf_star_profile(n: usize) -> StrategyProfile {
        // node 0 is the center; every leaf buys its center edge
        let mut buys = vec![vec![]; n];
        for b in buys.iter_mut().skip(1) {
            b.push(0);
        }
        StrategyProfile::from_buys(buys).unwrap()
    }

    #[test]
    fn build_graph_merges_double_purchases() {
        let p = StrategyProfile::from_buys(vec![vec![1], vec![0]]).unwrap();
        let g = p.build_graph();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(p.total_purchases(), 2);
    }

    #[test]
    fn build_graph_star_and_empty() {
        let p = leaf_star_profile(5);
        let g = p.build_graph();
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.edge_count(), 4);
        let e = StrategyProfile::empty(3).build_graph();
        assert_eq!(e.edge_count(), 0);
    }

    #[test]
    fn player_cost_star_leaf_and_isolated() {
        let p = leaf_star_profile(5);
        let spec = GameSpec::uniform(Variant::Max, 5, 2).unwrap();
        assert_eq!(player_cost(&spec, &p, 1), Cost::Finite(1));
        assert_eq!(player_cost(&spec, &p, 0), Cost::Finite(0));
        let lonely = StrategyProfile::empty(3);
        let spec3 = GameSpec::uniform(Variant::Max, 3, 2).unwrap();
        assert_eq!(player_cost(&spec3, &lonely, 0), Cost::Unbounded);
    }

    #[test]
    fn drop_player_keeps_other_purchases() {
        // center-owned star: dropping the center empties the graph
        let center = StrategyProfile::from_buys(vec![vec![1, 2, 3], vec![], vec![], vec![]])
            .unwrap();
        assert_eq!(center.drop_player(0).build_graph().edge_count(), 0);
        // leaf-owned star: dropping one leaf removes only its edge
        let leaves = leaf_star_profile(4);
        let d = leaves.drop_player(1);
        assert_eq!(d.build_graph().edge_count(), 2);
        assert!(d.buys(2).contains(&0));
    }

    #[test]
    fn best_response_max_star_leaf() {
        let p = leaf_star_profile(5);
        let spec = GameSpec::uniform(Variant::Max, 5, 2).unwrap();
        let br = best_response_max(&spec, &p, 1, &Budget::default()).unwrap();
        assert_eq!(br.cost, Cost::Finite(1));
        assert_eq!(br.strategy, vec![0]);
        assert_eq!(br.status, BrStatus::Exact);
    }

    #[test]
    fn best_response_max_is_lexicographically_smallest() {
        // two disjoint edges 1-2, 3-4 plus isolated player 0 with R = 2:
        // {1,3}, {1,4}, {2,3}, {2,4} all work; expect {1,3}
        let p = StrategyProfile::from_buys(vec![vec![], vec![2], vec![], vec![4], vec![]])
            .unwrap();
        let spec = GameSpec::uniform(Variant::Max, 5, 2).unwrap();
        let br = best_response_max(&spec, &p, 0, &Budget::default()).unwrap();
        assert_eq!(br.strategy, vec![1, 3]);
    }

    #[test]
    fn best_response_sum_star_center_forced_full() {
        // center-owned star, B = 2n - 3: the center cannot shed any edge
        let n = 6u64;
        let center =
            StrategyProfile::from_buys(vec![vec![1, 2, 3, 4, 5], vec![], vec![], vec![], vec![],
                vec![]])
            .unwrap();
        let spec = GameSpec::uniform(Variant::Sum, 6, 2 * n - 3).unwrap();
        let br = best_response_sum(&spec, &center, 0, &Budget::default()).unwrap();
        assert_eq!(br.cost, Cost::Finite(n - 1));
    }

    #[test]
    fn best_response_sum_star_leaf() {
        let p = leaf_star_profile(6);
        let spec = GameSpec::uniform(Variant::Sum, 6, 9).unwrap(); // 2n - 3
        let br = best_response_sum(&spec, &p, 2, &Budget::default()).unwrap();
        assert_eq!(br.cost, Cost::Finite(1));
        assert_eq!(br.strategy, vec![0]);
    }

    #[test]
    fn best_response_sum_infeasible_below_spanning() {
        let p = StrategyProfile::empty(5);
        let spec = GameSpec::uniform(Variant::Sum, 5, 3).unwrap(); // < n - 1
        let br = best_response_sum(&spec, &p, 0, &Budget::default()).unwrap();
        assert_eq!(br.status, BrStatus::Infeasible);
        assert_eq!(br.cost, Cost::Unbounded);
    }

    #[test]
    fn equilibrium_star_both_variants() {
        let p = leaf_star_profile(6);
        let max_spec = GameSpec::uniform(Variant::Max, 6, 2).unwrap();
        let rep = is_equilibrium(&max_spec, &p, &Budget::default());
        assert_eq!(rep.verdict, Verdict::Stable);
        assert_eq!(rep.social_cost, Cost::Finite(5));

        let sum_spec = GameSpec::uniform(Variant::Sum, 6, 9).unwrap();
        let rep = is_equilibrium(&sum_spec, &p, &Budget::default());
        assert_eq!(rep.verdict, Verdict::Stable);
    }

    #[test]
    fn equilibrium_detects_out_of_bound_players() {
        // two disjoint edges, max R = 2
        let p = StrategyProfile::from_buys(vec![vec![1], vec![], vec![3], vec![]]).unwrap();
        let spec = GameSpec::uniform(Variant::Max, 4, 2).unwrap();
        let rep = is_equilibrium(&spec, &p, &Budget::default());
        assert_eq!(rep.verdict, Verdict::Unstable);
        assert_eq!(rep.social_cost, Cost::Unbounded);
        assert!(rep.players.iter().any(|r| r.improving_deviation.is_some()));
    }

    #[test]
    fn unknown_on_resource_limit_never_stable() {
        // a big cycle forces real solving; 0 expansions cuts it off
        let n = 12;
        let buys: Vec<Vec<usize>> = (0..n).map(|v| vec![(v + 1) % n]).collect();
        let p = StrategyProfile::from_buys(buys).unwrap();
        let spec = GameSpec::uniform(Variant::Max, n, 3).unwrap();
        let rep = is_equilibrium(&spec, &p, &Budget::with_expansions(0));
        assert_ne!(rep.verdict, Verdict::Stable);
    }

    #[test]
    fn spec_validation() {
        assert!(GameSpec::new(Variant::Max, vec![]).is_err());
        assert!(GameSpec::new(Variant::Max, vec![1, 0]).is_err());
        assert!(StrategyProfile::from_buys(vec![vec![0]]).is_err());
        assert!(StrategyProfile::from_buys(vec![vec![3], vec![]]).is_err());
    }
}
