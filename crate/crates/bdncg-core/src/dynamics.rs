//! Best-response dynamics: iterate exact best responses one player at a time
//! until a full pass changes nothing, a profile state repeats, or the round
//! limit is hit. Deterministic given the game, initial profile, schedule and
//! seed.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::{Budget, CoverError};
use crate::game::{best_response, player_cost, Cost, GameSpec, StrategyProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    RoundRobin,
    Random { seed: u64 },
}

/// One applied deviation, as reported to the optional trace sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationEvent {
    pub round: usize,
    pub player: usize,
    pub old_strategy: Vec<usize>,
    pub new_strategy: Vec<usize>,
    pub old_cost: Cost,
    pub new_cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynamicsOutcome {
    /// A full pass changed nothing.
    Equilibrium { profile: StrategyProfile, rounds: usize },
    /// The end-of-round state matched an earlier round.
    Cycle { first_round: usize, repeat_round: usize, state_digest: u64 },
    /// Round limit reached without convergence or a detected cycle.
    Limit { profile: StrategyProfile, rounds: usize },
}

/// FNV-1a over the canonical strategy encoding; evidence for cycle reports.
fn profile_digest(profile: &StrategyProfile) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    };
    for v in 0..profile.n() {
        eat(u64::MAX); // player separator
        for &u in profile.buys(v) {
            eat(u as u64);
        }
    }
    h
}

/// Runs best-response dynamics for at most `max_rounds` full passes.
/// Each pass visits every player once (order fixed by the schedule) and
/// applies its exact best response whenever that strictly lowers its cost.
/// Solver resource exhaustion is propagated rather than silently treated as
/// convergence.
pub fn best_response_dynamics(
    spec: &GameSpec,
    initial: &StrategyProfile,
    schedule: Schedule,
    max_rounds: usize,
    budget: &Budget,
    mut on_event: Option<&mut dyn FnMut(&DeviationEvent)>,
) -> Result<DynamicsOutcome, CoverError> {
    assert!(max_rounds >= 1, "dynamics needs at least one round");
    let n = spec.n();
    let mut profile = initial.clone();
    let mut rng = match schedule {
        Schedule::RoundRobin => None,
        Schedule::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut seen: Vec<(StrategyProfile, usize)> = Vec::new();
    seen.push((profile.clone(), 0));

    for round in 1..=max_rounds {
        let mut order: Vec<usize> = (0..n).collect();
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let mut changed = false;
        for &v in &order {
            let current = player_cost(spec, &profile, v);
            if current == Cost::Finite(0) {
                continue;
            }
            let br = best_response(spec, &profile, v, budget)?;
            if br.cost < current {
                let old_strategy: Vec<usize> = profile.buys(v).iter().copied().collect();
                let next = profile.with_strategy(v, &br.strategy).expect("valid strategy");
                if let Some(sink) = on_event.as_deref_mut() {
                    sink(&DeviationEvent {
                        round,
                        player: v,
                        old_strategy,
                        new_strategy: br.strategy.clone(),
                        old_cost: current,
                        new_cost: br.cost,
                    });
                }
                profile = next;
                changed = true;
            }
        }
        if !changed {
            return Ok(DynamicsOutcome::Equilibrium { profile, rounds: round });
        }
        if let Some((_, first_round)) = seen.iter().find(|(p, _)| *p == profile) {
            return Ok(DynamicsOutcome::Cycle {
                first_round: *first_round,
                repeat_round: round,
                state_digest: profile_digest(&profile),
            });
        }
        seen.push((profile.clone(), round));
    }
    Ok(DynamicsOutcome::Limit { profile, rounds: max_rounds })
}
