//! Report rendering: human text, JSON (`--json`) and CSV rows for the
//! analysis output. JSON costs are numbers, with `null` for unbounded.

use bdncg_core::analysis::BoundReport;
use bdncg_core::dynamics::{DeviationEvent, DynamicsOutcome};
use bdncg_core::game::{BrStatus, Cost, EquilibriumReport};
use serde_json::{json, Value};

fn cost_json(c: Cost) -> Value {
    match c {
        Cost::Finite(x) => json!(x),
        Cost::Unbounded => Value::Null,
    }
}

fn status_str(s: BrStatus) -> &'static str {
    match s {
        BrStatus::Exact => "exact",
        BrStatus::HeuristicUpperBound => "heuristic-upper-bound",
        BrStatus::Infeasible => "infeasible",
    }
}

pub fn equilibrium_json(rep: &EquilibriumReport) -> Value {
    json!({
        "verdict": rep.verdict.to_string(),
        "social_cost": match rep.social_cost {
            Cost::Finite(c) => json!(c),
            Cost::Unbounded => Value::Null,
        },
        "players": rep.players.iter().map(|p| json!({
            "player": p.player,
            "current_cost": cost_json(p.current_cost),
            "best_cost": p.best_cost.map(cost_json).unwrap_or(Value::Null),
            "status": p.best_status.map(status_str).map(Value::from).unwrap_or(Value::Null),
            "improving_deviation": p.improving_deviation.clone().map(Value::from)
                .unwrap_or(Value::Null),
        })).collect::<Vec<_>>(),
    })
}

pub fn equilibrium_text(rep: &EquilibriumReport) -> String {
    let mut out = format!("verdict: {}\nsocial cost: {}\n", rep.verdict, rep.social_cost);
    for p in &rep.players {
        let best = p
            .best_cost
            .map(|c| c.to_string())
            .unwrap_or_else(|| String::from("resource-limit"));
        out.push_str(&format!(
            "  player {:>3}: cost {} best {}{}\n",
            p.player,
            p.current_cost,
            best,
            match &p.improving_deviation {
                Some(dev) => format!("  improves via {dev:?}"),
                None => String::new(),
            }
        ));
    }
    out
}

pub fn bound_report_json(rep: &BoundReport) -> Value {
    let m = &rep.measurements;
    let measurements = json!({
        "n": m.n,
        "min_degree": m.min_degree,
        "diameter": m.diameter,
        "self_centered": m.self_centered,
        "min_broadcast": m.min_broadcast,
        "gamma_power": m.gamma_power,
    });
    json!({
        "instance": rep.provenance,
        "verdict": rep.verdict.to_string(),
        "social_cost": rep.social_cost,
        "optimum": rep.optimum,
        "optimum_kind": rep.optimum_kind.to_string(),
        "ratio": rep.ratio(),
        "checks": rep.checks.iter().map(|c| json!({
            "check": c.name,
            "status": c.status.to_string(),
            "measured": c.measured,
            "bound": c.bound,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "measurements": measurements,
    })
}

/// Flat CSV: one row per check plus a leading ratio row.
/// Columns: instance, check, measured, bound, verdict.
pub fn bound_report_csv(rep: &BoundReport) -> String {
    let mut out = String::from("instance,check,measured,bound,verdict\n");
    let instance = rep.provenance.replace(',', ";");
    let ratio = rep.ratio().map(|r| format!("{r:.4}")).unwrap_or_else(|| String::from("unbounded"));
    out.push_str(&format!(
        "{instance},ratio,{},{},{ratio}\n",
        rep.social_cost.map(|c| c.to_string()).unwrap_or_else(|| String::from("unbounded")),
        rep.optimum
    ));
    for c in &rep.checks {
        out.push_str(&format!(
            "{instance},{},{},{},{}\n",
            c.name, c.measured, c.bound, c.status
        ));
    }
    out
}

pub fn bound_report_text(rep: &BoundReport) -> String {
    let mut out = format!(
        "instance: {}\nverdict: {}\nsocial cost: {}\noptimum: {} ({})\nratio: {}\n",
        rep.provenance,
        rep.verdict,
        rep.social_cost.map(|c| c.to_string()).unwrap_or_else(|| String::from("unbounded")),
        rep.optimum,
        rep.optimum_kind,
        rep.ratio().map(|r| format!("{r:.4}")).unwrap_or_else(|| String::from("-")),
    );
    for c in &rep.checks {
        out.push_str(&format!(
            "  {:<20} {:<8} measured {:>8} bound {:>8}  {}\n",
            c.name, c.status.to_string(), c.measured, c.bound, c.detail
        ));
    }
    out
}

pub fn dynamics_json(outcome: &DynamicsOutcome) -> Value {
    match outcome {
        DynamicsOutcome::Equilibrium { profile, rounds } => json!({
            "outcome": "equilibrium",
            "rounds": rounds,
            "buys": (0..profile.n()).map(|v| profile.buys(v).iter().copied().collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        DynamicsOutcome::Cycle { first_round, repeat_round, state_digest } => json!({
            "outcome": "cycle",
            "first_round": first_round,
            "repeat_round": repeat_round,
            "state_digest": format!("{state_digest:016x}"),
        }),
        DynamicsOutcome::Limit { rounds, .. } => json!({
            "outcome": "limit",
            "rounds": rounds,
        }),
    }
}

pub fn dynamics_text(outcome: &DynamicsOutcome) -> String {
    match outcome {
        DynamicsOutcome::Equilibrium { profile, rounds } => format!(
            "EQUILIBRIUM after {rounds} round(s); social cost {}\n",
            profile.total_purchases()
        ),
        DynamicsOutcome::Cycle { first_round, repeat_round, state_digest } => format!(
            "CYCLE: state of round {repeat_round} first seen after round {first_round} \
             (digest {state_digest:016x})\n"
        ),
        DynamicsOutcome::Limit { rounds, .. } => {
            format!("LIMIT: no convergence within {rounds} round(s)\n")
        }
    }
}

pub fn trace_line(e: &DeviationEvent) -> String {
    json!({
        "round": e.round,
        "player": e.player,
        "old": e.old_strategy,
        "new": e.new_strategy,
        "old_cost": cost_json(e.old_cost),
        "new_cost": cost_json(e.new_cost),
    })
    .to_string()
}
