//! Ratio reporting and verifiers for the structural bounds that provably
//! hold at equilibrium.
//!
//! The verifiers are framed as bug detectors: on a verified stable profile
//! the inequalities are theorems (for uniform bounds), so a failure points at
//! an implementation bug rather than a finding. A check that cannot be
//! completed within the solver budget is reported as skipped, never as a
//! pass; likewise no check passes when the underlying equilibrium verdict is
//! unknown.
//!
//! Non-uniform instances are handled conservatively: the power-graph
//! domination checks use the smallest player bound, which keeps the forest
//! argument behind the gamma bound valid for every player.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cover::{min_dominating_set, Budget, CoverError};
use crate::game::{EquilibriumReport, GameSpec, StrategyProfile, Variant, Verdict};
use crate::graph::Graph;
use crate::instances::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimumKind {
    Exact,
    LowerBound,
}

impl fmt::Display for OptimumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptimumKind::Exact => write!(f, "EXACT"),
            OptimumKind::LowerBound => write!(f, "LOWER_BOUND"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    /// Per-instance optimum must be supplied for non-uniform bounds.
    NonUniform,
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::NonUniform => {
                write!(f, "optimum for non-uniform bounds must be supplied per instance")
            }
        }
    }
}

/// Social-optimum value for uniform specs.
///
/// * max, `R >= 2`: a spanning star, `n - 1` (exact);
/// * max, `R = 1`: the complete graph is forced, `n(n-1)/2` (exact);
/// * sum, `B >= 2n - 3`: a spanning star, `n - 1` (exact);
/// * sum, `B = n - 1 + k < 2n - 3`: every within-bound node needs degree at
///   least `n - 1 - k`, so `max(n - 1, ceil(n(n-1-k)/2))` (lower bound).
pub fn optimum_estimate(spec: &GameSpec) -> Result<(u64, OptimumKind), AnalysisError> {
    let bound = spec.uniform_bound().ok_or(AnalysisError::NonUniform)?;
    let n = spec.n() as u64;
    Ok(match spec.variant() {
        Variant::Max => {
            if bound == 1 && n > 1 {
                (n * (n - 1) / 2, OptimumKind::Exact)
            } else {
                (n.saturating_sub(1), OptimumKind::Exact)
            }
        }
        Variant::Sum => {
            if n <= 2 || bound >= 2 * n - 3 {
                (n.saturating_sub(1), OptimumKind::Exact)
            } else {
                // bound = n - 1 + k; degree n - 1 - k = 2(n - 1) - bound
                let min_degree = (2 * (n - 1)).saturating_sub(bound);
                let lb = (n * min_degree).div_ceil(2);
                ((n - 1).max(lb), OptimumKind::LowerBound)
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "PASS"),
            CheckStatus::Fail => write!(f, "FAIL"),
            CheckStatus::Skipped => write!(f, "SKIPPED"),
        }
    }
}

/// One verified inequality with the numbers that decide it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub measured: u64,
    pub bound: u64,
    pub detail: String,
}

impl CheckResult {
    fn skipped(name: &'static str, why: &str) -> Self {
        CheckResult {
            name,
            status: CheckStatus::Skipped,
            measured: 0,
            bound: 0,
            detail: String::from(why),
        }
    }

    fn from_le(name: &'static str, measured: u64, bound: u64, detail: String) -> Self {
        CheckResult {
            name,
            status: if measured <= bound { CheckStatus::Pass } else { CheckStatus::Fail },
            measured,
            bound,
            detail,
        }
    }
}

/// Smallest player bound; the conservative power for non-uniform instances.
fn effective_radius(spec: &GameSpec) -> u64 {
    spec.bounds().iter().copied().min().unwrap_or(1)
}

/// Exact dominating-set size of `G^(R-1)`, where `R` is the smallest player
/// bound. For `R = 1` the zeroth power has no edges, so every node dominates
/// only itself.
fn gamma_of_power(
    g: &Graph,
    spec: &GameSpec,
    budget: &Budget,
) -> Result<u64, CoverError> {
    let r = effective_radius(spec);
    if r <= 1 {
        return Ok(g.n() as u64);
    }
    let r = u32::try_from((r - 1).min(g.n() as u64)).expect("clamped to n");
    let power = g.power(r);
    Ok(min_dominating_set(&power, budget)?.len() as u64)
}

/// Social cost at equilibrium: every player within bound, so it is the
/// total number of purchases.
fn social_cost(profile: &StrategyProfile) -> u64 {
    profile.total_purchases()
}

/// At equilibrium, `SC <= (gamma + 1)(n - 1)` where `gamma` is the minimum
/// dominating set of `G^(R-1)`.
pub fn verify_gamma_bound(
    spec: &GameSpec,
    profile: &StrategyProfile,
    budget: &Budget,
) -> CheckResult {
    if spec.variant() != Variant::Max {
        return CheckResult::skipped("gamma_bound", "applies to the max variant");
    }
    let g = profile.build_graph();
    match gamma_of_power(&g, spec, budget) {
        Ok(gamma) => {
            let n = g.n() as u64;
            CheckResult::from_le(
                "gamma_bound",
                social_cost(profile),
                (gamma + 1) * (n - 1),
                format!("gamma(G^(R-1)) = {gamma}"),
            )
        }
        Err(_) => CheckResult::skipped("gamma_bound", "dominating-set solver hit budget"),
    }
}

/// At equilibrium, `SC <= (delta + 1)(n - 1)` where `delta` is the minimum
/// degree.
pub fn verify_delta_bound(spec: &GameSpec, profile: &StrategyProfile) -> CheckResult {
    if spec.variant() != Variant::Max {
        return CheckResult::skipped("delta_bound", "applies to the max variant");
    }
    let g = profile.build_graph();
    let delta = g.min_degree() as u64;
    let n = g.n() as u64;
    CheckResult::from_le(
        "delta_bound",
        social_cost(profile),
        (delta + 1) * (n - 1),
        format!("delta = {delta}"),
    )
}

/// Ball growth at a max-variant equilibrium: for every `k >= 1` with
/// `3k + 1 <=` diameter, the minimum ball satisfies
/// `beta(3k+1) >= min(n, gamma * beta(k))`.
pub fn verify_ball_growth(
    spec: &GameSpec,
    profile: &StrategyProfile,
    budget: &Budget,
) -> CheckResult {
    if spec.variant() != Variant::Max {
        return CheckResult::skipped("ball_growth", "applies to the max variant");
    }
    let g = profile.build_graph();
    let Some(diameter) = g.diameter() else {
        return CheckResult::skipped("ball_growth", "graph is disconnected");
    };
    let gamma = match gamma_of_power(&g, spec, budget) {
        Ok(gamma) => gamma,
        Err(_) => return CheckResult::skipped("ball_growth", "dominating-set solver hit budget"),
    };
    ball_growth_check("ball_growth", &g, gamma, diameter, g.n() as u64, 1, |k| 3 * k + 1)
}

/// Shared evaluator for the two ball-growth inequalities.
fn ball_growth_check(
    name: &'static str,
    g: &Graph,
    factor: u64,
    diameter: u32,
    cap: u64,
    first_k: u32,
    jump: impl Fn(u32) -> u32,
) -> CheckResult {
    let mut tightest: Option<(u64, u64, u32)> = None;
    let mut k = first_k;
    while jump(k) <= diameter {
        let beta_k = g.ball_profile(k).min_size() as u64;
        let beta_jump = g.ball_profile(jump(k)).min_size() as u64;
        let required = cap.min(factor * beta_k);
        if beta_jump < required {
            return CheckResult {
                name,
                status: CheckStatus::Fail,
                measured: beta_jump,
                bound: required,
                detail: format!("violated at k = {k}"),
            };
        }
        let slack = beta_jump - required;
        if tightest.is_none_or(|(m, b, _)| m - b > slack) {
            tightest = Some((beta_jump, required, k));
        }
        k += 1;
    }
    match tightest {
        Some((measured, bound, k)) => CheckResult {
            name,
            status: CheckStatus::Pass,
            measured,
            bound,
            detail: format!("tightest at k = {k}"),
        },
        None => CheckResult {
            name,
            status: CheckStatus::Pass,
            measured: 0,
            bound: 0,
            detail: format!("vacuous: diameter {diameter} admits no k"),
        },
    }
}

/// A max-variant equilibrium that is not self-centered has `SC <= 2(n - 1)`.
pub fn verify_self_centered_rule(spec: &GameSpec, profile: &StrategyProfile) -> CheckResult {
    if spec.variant() != Variant::Max {
        return CheckResult::skipped("self_centered_rule", "applies to the max variant");
    }
    let g = profile.build_graph();
    let n = g.n() as u64;
    if g.is_self_centered() {
        return CheckResult {
            name: "self_centered_rule",
            status: CheckStatus::Pass,
            measured: social_cost(profile),
            bound: 2 * (n - 1),
            detail: String::from("graph is self-centered; rule vacuous"),
        };
    }
    CheckResult::from_le(
        "self_centered_rule",
        social_cost(profile),
        2 * (n - 1),
        String::from("graph is not self-centered"),
    )
}

/// A sum-variant equilibrium with a node whose broadcast cost is at most
/// `B - n` has `SC <= 2(n - 1)`.
pub fn verify_sum_slack_rule(spec: &GameSpec, profile: &StrategyProfile) -> CheckResult {
    if spec.variant() != Variant::Sum {
        return CheckResult::skipped("sum_slack_rule", "applies to the sum variant");
    }
    let g = profile.build_graph();
    let n = g.n() as u64;
    let mut min_broadcast = None;
    let mut triggered = false;
    for v in 0..g.n() {
        if let Some(b) = g.broadcast_cost(v) {
            min_broadcast = Some(min_broadcast.map_or(b, |m: u64| m.min(b)));
            if b <= spec.bound(v).saturating_sub(n) {
                triggered = true;
            }
        }
    }
    if !triggered {
        return CheckResult {
            name: "sum_slack_rule",
            status: CheckStatus::Pass,
            measured: social_cost(profile),
            bound: 2 * (n - 1),
            detail: format!(
                "vacuous: no node has broadcast <= B - n (min broadcast {:?})",
                min_broadcast
            ),
        };
    }
    CheckResult::from_le(
        "sum_slack_rule",
        social_cost(profile),
        2 * (n - 1),
        String::from("some node has broadcast <= B - n"),
    )
}

/// Ball growth at a sum-variant equilibrium: for every `k >= 1` with
/// `3k + 2 <=` diameter, `beta(3k+2) >= min(n/2 + 1, floor(rho) * beta(k))`
/// where `rho = SC / (n - 1)`.
pub fn verify_sum_ball_growth(spec: &GameSpec, profile: &StrategyProfile) -> CheckResult {
    if spec.variant() != Variant::Sum {
        return CheckResult::skipped("sum_ball_growth", "applies to the sum variant");
    }
    let g = profile.build_graph();
    let Some(diameter) = g.diameter() else {
        return CheckResult::skipped("sum_ball_growth", "graph is disconnected");
    };
    let n = g.n() as u64;
    if n < 2 {
        return CheckResult::skipped("sum_ball_growth", "trivial graph");
    }
    let rho_floor = social_cost(profile) / (n - 1);
    ball_growth_check("sum_ball_growth", &g, rho_floor, diameter, n / 2 + 1, 1, |k| 3 * k + 2)
}

/// Measured quantities every pass/fail above is recomputable from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measurements {
    pub n: usize,
    pub min_degree: usize,
    pub diameter: Option<u32>,
    pub self_centered: bool,
    pub min_broadcast: Option<u64>,
    pub gamma_power: Option<u64>,
}

/// Ratio report plus every applicable check for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub provenance: String,
    pub verdict: Verdict,
    pub social_cost: Option<u64>,
    pub optimum: u64,
    pub optimum_kind: OptimumKind,
    pub checks: Vec<CheckResult>,
    pub measurements: Measurements,
}

impl BoundReport {
    /// `SC / optimum`; lower-bound optima only ever overstate this.
    pub fn ratio(&self) -> Option<f64> {
        let sc = self.social_cost?;
        (self.optimum > 0).then(|| sc as f64 / self.optimum as f64)
    }
}

/// Assembles the ratio and all applicable checks for an instance whose
/// equilibrium verdict is already known. Checks run only on a stable
/// verdict; anything else leaves them skipped so an unknown verdict can
/// never surface as a pass.
pub fn report(
    instance: &Instance,
    eq: &EquilibriumReport,
    budget: &Budget,
) -> Result<BoundReport, AnalysisError> {
    let spec = &instance.spec;
    let profile = &instance.profile;
    let (optimum, optimum_kind) = match instance.expected.optimum {
        Some(v) => (v, OptimumKind::Exact),
        None => optimum_estimate(spec)?,
    };
    let g = profile.build_graph();
    let mut gamma_power = None;
    let checks = if eq.verdict == Verdict::Stable {
        if spec.variant() == Variant::Max {
            if let Ok(gamma) = gamma_of_power(&g, spec, budget) {
                gamma_power = Some(gamma);
            }
        }
        match spec.variant() {
            Variant::Max => alloc::vec![
                verify_gamma_bound(spec, profile, budget),
                verify_delta_bound(spec, profile),
                verify_ball_growth(spec, profile, budget),
                verify_self_centered_rule(spec, profile),
            ],
            Variant::Sum => alloc::vec![
                verify_sum_slack_rule(spec, profile),
                verify_sum_ball_growth(spec, profile),
            ],
        }
    } else {
        alloc::vec![CheckResult::skipped(
            "all",
            "equilibrium verdict is not STABLE; checks not applicable",
        )]
    };
    let min_broadcast = (0..g.n()).filter_map(|v| g.broadcast_cost(v)).min();
    Ok(BoundReport {
        provenance: instance.provenance(),
        verdict: eq.verdict,
        social_cost: match eq.social_cost {
            crate::game::Cost::Finite(c) => Some(c),
            crate::game::Cost::Unbounded => None,
        },
        optimum,
        optimum_kind,
        checks,
        measurements: Measurements {
            n: g.n(),
            min_degree: g.min_degree(),
            diameter: g.diameter(),
            self_centered: g.is_self_centered(),
            min_broadcast,
            gamma_power,
        },
    })
}
