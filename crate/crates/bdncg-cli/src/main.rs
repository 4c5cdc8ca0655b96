//! `bdncg`: generate, check and analyze bounded-distance network creation
//! game instances.
//!
//! Exit codes: 0 success (`check`: STABLE), 1 `check` UNSTABLE, 2 usage or
//! parse errors, 3 solver resource limit (`check`: UNKNOWN).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context, Result};
use bdncg_cli::{export, format, output};
use bdncg_core::analysis::report;
use bdncg_core::cover::{Budget, CoverError, DEFAULT_EXPANSION_BUDGET};
use bdncg_core::dynamics::{best_response_dynamics, Schedule};
use bdncg_core::game::{
    assemble_report, best_response, is_equilibrium, player_report, GameSpec, StrategyProfile,
    Variant, Verdict,
};
use bdncg_core::instances::{
    clique_pendant, complete, gadget_with_pendants, multipartite_sum, path_hub, prime_tree,
    reduction_from_dominating_set, reduction_from_kmedian, ring_family, ring_family_costs, star,
    Instance, StarOwner,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bdncg", version, about = "Bounded-distance network creation games")]
struct Cli {
    /// Node-expansion budget for the exact solvers.
    #[arg(long, global = true, env = "BDNCG_BUDGET")]
    budget: Option<u64>,
    /// Wall-clock cap in seconds for the exact solvers.
    #[arg(long, global = true)]
    timeout: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Verify whether an instance is a Nash equilibrium.
    Check {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Worker threads for the per-player checks.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exact best response for one player.
    BestResponse {
        input: PathBuf,
        #[arg(long)]
        player: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run best-response dynamics from the instance's profile.
    Dynamics {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ScheduleArg::RoundRobin)]
        schedule: ScheduleArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
        /// Write one JSON line per applied deviation.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Equilibrium check plus ratio and structural-bound report.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also write the report as CSV rows (one per check).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Export the induced graph.
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    RoundRobin,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Edgelist,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OwnerArg {
    Center,
    Leaves,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Max,
    Sum,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Max => Variant::Max,
            VariantArg::Sum => Variant::Sum,
        }
    }
}

#[derive(Subcommand)]
enum Family {
    /// Spanning star.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        owner: OwnerArg,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Complete graph.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Clique with pendant paths and its non-uniform stabilizing bounds.
    CliquePendant {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Path of 2R nodes plus h hub players (max variant, bound R).
    PathHub {
        #[arg(long = "R")]
        r: usize,
        #[arg(long)]
        h: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Diameter-2 prime construction (max variant, bound 2).
    PrimeTree {
        #[arg(long)]
        p: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Complete multipartite construction (sum variant, bound n-1+k).
    Multipartite {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Ring family (sum variant); defaults to the lower window edge.
    Ring {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: usize,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Regular self-centered gadget plus pendant players (max variant).
    Gadget {
        /// Gadget graph: instance JSON or edge list.
        #[arg(long)]
        gadget: PathBuf,
        #[arg(long)]
        pendants: usize,
        #[arg(long = "R")]
        r: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Dominating-set reduction testbed (max variant).
    ReduceDomset {
        /// Base graph: instance JSON or edge list.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "R")]
        r: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// k-median reduction testbed (sum variant, bound beta + N).
    ReduceKmedian {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        beta: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
}

/// Distance-bound flags shared by the generators that take one. For the sum
/// variant `--D` is accepted as an average-distance bound and converted to
/// `B = round(D * n)`; the chosen B is echoed.
#[derive(clap::Args)]
struct BoundArgs {
    /// Eccentricity bound (max variant).
    #[arg(long = "R")]
    r: Option<u64>,
    /// Broadcast-cost bound (sum variant).
    #[arg(long = "B")]
    b: Option<u64>,
    /// Average-distance bound (sum variant); converted to B = round(D * n).
    #[arg(long = "D")]
    d: Option<f64>,
}

impl BoundArgs {
    fn resolve(&self, variant: Variant, n: usize, default: u64) -> Result<u64> {
        match variant {
            Variant::Max => {
                if self.b.is_some() || self.d.is_some() {
                    return Err(anyhow!("--B/--D apply to the sum variant; use --R"));
                }
                Ok(self.r.unwrap_or(default))
            }
            Variant::Sum => {
                if self.r.is_some() {
                    return Err(anyhow!("--R applies to the max variant; use --B or --D"));
                }
                match (self.b, self.d) {
                    (Some(_), Some(_)) => Err(anyhow!("--B and --D are mutually exclusive")),
                    (Some(b), None) => Ok(b),
                    (None, Some(d)) => {
                        let b = (d * n as f64).round() as u64;
                        println!("using B = round(D * n) = {b}");
                        Ok(b)
                    }
                    (None, None) => Ok(default),
                }
            }
        }
    }
}

const EXIT_UNSTABLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = make_budget(cli.budget, cli.timeout);
    match run(cli.cmd, &budget) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn make_budget(budget: Option<u64>, timeout: Option<f64>) -> Budget {
    let stop = timeout.map(|secs| {
        let deadline = Instant::now() + Duration::from_secs_f64(secs.max(0.0));
        Arc::new(move || Instant::now() > deadline) as Arc<dyn Fn() -> bool + Send + Sync>
    });
    Budget { max_expansions: budget.unwrap_or(DEFAULT_EXPANSION_BUDGET), stop }
}

fn run(cmd: Cmd, budget: &Budget) -> Result<u8> {
    match cmd {
        Cmd::Gen { family } => cmd_gen(family),
        Cmd::Check { input, json, jobs } => cmd_check(&input, json, jobs, budget),
        Cmd::BestResponse { input, player, json } => cmd_best_response(&input, player, json, budget),
        Cmd::Dynamics { input, schedule, seed, max_rounds, trace, json } => {
            cmd_dynamics(&input, schedule, seed, max_rounds, trace.as_deref(), json, budget)
        }
        Cmd::Analyze { input, json, csv } => cmd_analyze(&input, json, csv.as_deref(), budget),
        Cmd::Export { input, format, out } => cmd_export(&input, format, out.as_deref()),
    }
}

fn cmd_gen(family: Family) -> Result<u8> {
    let (inst, out) = build_instance(family)?;
    format::save_instance(&inst, &out)?;
    let g = inst.profile.build_graph();
    println!(
        "{}: n = {}, edges = {}, purchases = {} -> {}",
        inst.provenance(),
        g.n(),
        g.edge_count(),
        inst.profile.total_purchases(),
        out.display()
    );
    Ok(0)
}

fn build_instance(family: Family) -> Result<(Instance, PathBuf)> {
    let gen_err = |e: bdncg_core::instances::GenError| anyhow!("{e}");
    Ok(match family {
        Family::Star { n, owner, variant, bound, out } => {
            let variant = Variant::from(variant);
            let default = match variant {
                Variant::Max => 2,
                Variant::Sum => 2 * n as u64 - 3,
            };
            let b = bound.resolve(variant, n, default)?;
            let owner = match owner {
                OwnerArg::Center => StarOwner::Center,
                OwnerArg::Leaves => StarOwner::Leaves,
            };
            (star(n, owner, variant, b).map_err(gen_err)?, out)
        }
        Family::Complete { n, variant, bound, out } => {
            let variant = Variant::from(variant);
            let default = match variant {
                Variant::Max => 1,
                Variant::Sum => n as u64 - 1,
            };
            let b = bound.resolve(variant, n, default)?;
            (complete(n, variant, b).map_err(gen_err)?, out)
        }
        Family::CliquePendant { k, variant, out } => {
            (clique_pendant(k, Variant::from(variant)).map_err(gen_err)?, out)
        }
        Family::PathHub { r, h, out } => (path_hub(r, h).map_err(gen_err)?, out),
        Family::PrimeTree { p, out } => (prime_tree(p).map_err(gen_err)?, out),
        Family::Multipartite { n, k, out } => (multipartite_sum(n, k).map_err(gen_err)?, out),
        Family::Ring { k, h, bound, out } => {
            let costs = ring_family_costs(k, h).map_err(gen_err)?;
            let (lo, hi) = costs.stability_window();
            let b = bound.resolve(Variant::Sum, costs.n, lo)?;
            println!("stability window: B in [{lo}, {hi})");
            (ring_family(k, h, b).map_err(gen_err)?, out)
        }
        Family::Gadget { gadget, pendants, r, out } => {
            let g = export::load_graph(&gadget)?;
            (gadget_with_pendants(&g, pendants, r).map_err(gen_err)?, out)
        }
        Family::ReduceDomset { graph, r, out } => {
            let g = export::load_graph(&graph)?;
            (reduction_from_dominating_set(&g, r).map_err(gen_err)?, out)
        }
        Family::ReduceKmedian { graph, beta, out } => {
            let g = export::load_graph(&graph)?;
            (reduction_from_kmedian(&g, beta).map_err(gen_err)?, out)
        }
    })
}

/// Per-player reports, optionally fanned out over worker threads. Reports
/// are reassembled in player order, so the output is deterministic no
/// matter the parallelism.
fn parallel_reports(
    spec: &GameSpec,
    profile: &StrategyProfile,
    jobs: usize,
    budget: &Budget,
) -> Vec<bdncg_core::game::PlayerReport> {
    let n = spec.n();
    if jobs <= 1 || n <= 1 {
        return (0..n).map(|v| player_report(spec, profile, v, budget)).collect();
    }
    let chunk = n.div_ceil(jobs.min(n));
    let mut reports = Vec::with_capacity(n);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|start| {
                let end = (start + chunk).min(n);
                scope.spawn(move || {
                    (start..end)
                        .map(|v| player_report(spec, profile, v, budget))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            reports.extend(h.join().expect("worker panicked"));
        }
    });
    reports
}

fn cmd_check(input: &Path, json: bool, jobs: usize, budget: &Budget) -> Result<u8> {
    let inst = format::load_instance(input)?;
    let rep = assemble_report(parallel_reports(&inst.spec, &inst.profile, jobs, budget));
    if json {
        println!("{}", serde_json::to_string_pretty(&output::equilibrium_json(&rep))?);
    } else {
        print!("{}", output::equilibrium_text(&rep));
    }
    Ok(match rep.verdict {
        Verdict::Stable => 0,
        Verdict::Unstable => EXIT_UNSTABLE,
        Verdict::Unknown => EXIT_RESOURCE,
    })
}

fn cmd_best_response(input: &Path, player: usize, json: bool, budget: &Budget) -> Result<u8> {
    let inst = format::load_instance(input)?;
    if player >= inst.spec.n() {
        eprintln!("error: player {player} out of range (n = {})", inst.spec.n());
        return Ok(EXIT_USAGE);
    }
    match best_response(&inst.spec, &inst.profile, player, budget) {
        Ok(br) => {
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "player": br.player,
                        "cost": br.cost.finite(),
                        "status": format!("{:?}", br.status),
                        "strategy": br.strategy,
                    })
                );
            } else {
                println!(
                    "player {}: best cost {} ({:?}), strategy {:?}",
                    br.player, br.cost, br.status, br.strategy
                );
            }
            Ok(0)
        }
        Err(CoverError::ResourceLimit) => {
            eprintln!("resource budget exhausted");
            Ok(EXIT_RESOURCE)
        }
        Err(e) => Err(anyhow!("{e}")),
    }
}

fn cmd_dynamics(
    input: &Path,
    schedule: ScheduleArg,
    seed: u64,
    max_rounds: usize,
    trace: Option<&Path>,
    json: bool,
    budget: &Budget,
) -> Result<u8> {
    let inst = format::load_instance(input)?;
    let schedule = match schedule {
        ScheduleArg::RoundRobin => Schedule::RoundRobin,
        ScheduleArg::Random => Schedule::Random { seed },
    };
    let mut trace_lines: Vec<String> = Vec::new();
    let mut sink = |e: &bdncg_core::dynamics::DeviationEvent| {
        trace_lines.push(output::trace_line(e));
    };
    let outcome = best_response_dynamics(
        &inst.spec,
        &inst.profile,
        schedule,
        max_rounds,
        budget,
        Some(&mut sink),
    );
    if let Some(path) = trace {
        let mut f = fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
        for line in &trace_lines {
            writeln!(f, "{line}")?;
        }
    }
    match outcome {
        Ok(outcome) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&output::dynamics_json(&outcome))?);
            } else {
                print!("{}", output::dynamics_text(&outcome));
            }
            Ok(0)
        }
        Err(CoverError::ResourceLimit) => {
            eprintln!("resource budget exhausted");
            Ok(EXIT_RESOURCE)
        }
        Err(e) => Err(anyhow!("{e}")),
    }
}

fn cmd_analyze(input: &Path, json: bool, csv: Option<&Path>, budget: &Budget) -> Result<u8> {
    let inst = format::load_instance(input)?;
    let eq = is_equilibrium(&inst.spec, &inst.profile, budget);
    let rep = report(&inst, &eq, budget).map_err(|e| {
        anyhow!("{e}; set meta.expected.optimum in the instance file for non-uniform bounds")
    })?;
    if json {
        println!("{}", serde_json::to_string_pretty(&output::bound_report_json(&rep))?);
    } else {
        print!("{}", output::bound_report_text(&rep));
    }
    if let Some(path) = csv {
        fs::write(path, output::bound_report_csv(&rep))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if eq.verdict == Verdict::Unknown { EXIT_RESOURCE } else { 0 })
}

fn cmd_export(input: &Path, fmt: FormatArg, out: Option<&Path>) -> Result<u8> {
    let file = format::InstanceFile::load(input)?;
    let inst = file.to_instance()?;
    let text = match fmt {
        FormatArg::Dot => export::to_dot(&inst.profile),
        FormatArg::Edgelist => export::to_edgelist(&inst.profile.build_graph()),
        FormatArg::Json => file.to_canonical_json()?,
    };
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}
