//! `spr`: command-line front end for shortest path reconfiguration.
//!
//! Exit codes: 0 success / yes-verdict, 1 no-verdict or infeasible,
//! 2 usage error, 3 path cap exceeded.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spr_core::classes::{
    bounded_diameter_solve, circle_solve, circular_arc_solve, hypercube_solve,
    permutation_solve, weakly_modular_solve, BoundedParams, Representation, SolveOutcome,
};
use spr_core::cost::{min_max, min_sum, min_top_l, reduc_decide, Cost, CostModel, TopL};
use spr_core::io::{format_instance, load_instance, parse_path, LoadedInstance};
use spr_core::reductions::{gadget_chain, graph_power, kspr_line_instance, subdivide_uniform};
use spr_core::verify as sweeps;
use spr_core::{
    reconfig_diameter, shortest_reconfig_sequence, Diameter, Error, ReconfigSequence,
    ShortestPath, StInstance, DEFAULT_PATH_CAP,
};

#[derive(Parser)]
#[command(name = "spr", version, about = "shortest path reconfiguration toolkit")]
struct Cli {
    /// Emit one JSON object per result line instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sweeps; fixed default keeps output reproducible.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide reconfigurability with a class-specific solver.
    Solve(SolveArgs),
    /// Exact oracle: minimum k-step sequence via the reconfiguration graph.
    Oracle(OracleArgs),
    /// Emit instance files for the built-in families and transformers.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Sweep a class solver against the oracle on random instances.
    Verify(VerifyArgs),
    /// Count s-t shortest paths exactly.
    Count { instance: String },
    /// Diameter of the k-step reconfiguration graph.
    Diameter {
        #[arg(long, default_value_t = 1)]
        k: usize,
        instance: String,
    },
    /// Cost-variant optimizers.
    #[command(subcommand)]
    Cost(CostCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverClass {
    Permutation,
    Circle,
    Arc,
    WeaklyModular,
    Hypercube,
    Bounded,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    class: SolverClass,
    /// Path file for the start path P.
    #[arg(long)]
    p: String,
    /// Path file for the goal path Q.
    #[arg(long)]
    q: String,
    instance: String,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
    instance: String,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Gadget chain with g gadgets of width l.
    Chain { g: usize, l: usize },
    /// Boolean hypercube instance; s and t given as bit strings.
    Hypercube { d: u32, s: String, t: String },
    /// k-SPR line-graph reduction of an instance file.
    Linegraph { file: String, k: usize },
    /// k-th graph power of an instance file.
    Power { file: String, k: usize },
    /// Subdivide every edge l times.
    Subdivide { file: String, l: usize },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    class: SolverClass,
    /// Largest instance size to draw.
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Seed count per size, or `exhaustive` for the acceptance-scale sweep.
    #[arg(long, default_value = "50")]
    trials: String,
}

#[derive(Subcommand)]
enum CostCommand {
    Minsum(CostArgs),
    Minmax(CostArgs),
    Mintop(TopArgs),
    /// The SPR decision through the two-tier cost construction.
    Reduc(ReducArgs),
}

#[derive(Args)]
struct CostArgs {
    /// File with the monotone price table p_1..p_n (integers or a/b).
    #[arg(long)]
    costs: String,
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
    instance: String,
}

#[derive(Args)]
struct TopArgs {
    #[arg(long)]
    costs: String,
    /// Number of largest step costs summed; `inf` for the MinSum limit.
    #[arg(long)]
    l: String,
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
    instance: String,
}

#[derive(Args)]
struct ReducArgs {
    #[arg(long, default_value_t = 2)]
    l: usize,
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
    instance: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn path_cap() -> usize {
    std::env::var("RECONFIG_PATH_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_PATH_CAP)
}

/// Loads an instance from a file path or an inline `gen:` spec such as
/// `gen:chain:2:3` or `gen:hypercube:3:000:111`.
fn resolve_instance(arg: &str) -> Result<LoadedInstance, Error> {
    if let Some(spec) = arg.strip_prefix("gen:") {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = |msg: &str| Error::PreconditionViolated(format!("gen spec {arg:?}: {msg}"));
        return match parts.as_slice() {
            ["chain", g, l] => {
                let g: usize = g.parse().map_err(|_| bad("bad g"))?;
                let l: usize = l.parse().map_err(|_| bad("bad l"))?;
                if g == 0 || l == 0 {
                    return Err(bad("g and l must be positive"));
                }
                Ok(LoadedInstance {
                    instance: gadget_chain(g, l),
                    representation: None,
                })
            }
            ["hypercube", d, s, t] => {
                let d: u32 = d.parse().map_err(|_| bad("bad d"))?;
                let rep = spr_core::classes::HypercubeRep::new(d)?;
                let s = usize::from_str_radix(s, 2).map_err(|_| bad("bad s bits"))?;
                let t = usize::from_str_radix(t, 2).map_err(|_| bad("bad t bits"))?;
                Ok(LoadedInstance {
                    instance: spr_core::classes::hypercube_instance(d, s, t)?,
                    representation: Some(Representation::Hypercube(rep)),
                })
            }
            _ => Err(bad("unknown generator")),
        };
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{arg}: {e}"),
    })?;
    load_instance(&text)
}

fn read_path(file: &str, instance: &StInstance) -> Result<ShortestPath, Error> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{file}: {e}"),
    })?;
    ShortestPath::new(instance, parse_path(&text)?)
}

fn print_sequence(seq: &ReconfigSequence, k: usize) {
    print!("{}", seq.render(k));
}

fn emit_outcome(out: &SolveOutcome, k: usize, json: bool) -> ExitCode {
    if out.oracle_fallback {
        eprintln!("note: sequence produced by the oracle fallback");
    }
    if json {
        let mut obj = json!({"verdict": if out.reconfigurable { "yes" } else { "no" }});
        if let Some(seq) = &out.sequence {
            obj["steps"] = json!(seq.len());
            obj["stages"] = json!(seq.stages());
            obj["k"] = json!(k);
        }
        println!("{obj}");
    } else {
        println!("verdict {}", if out.reconfigurable { "yes" } else { "no" });
        if let Some(seq) = &out.sequence {
            print_sequence(seq, k);
        }
    }
    if out.reconfigurable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let cap = path_cap();
    match cli.command {
        Command::Solve(args) => {
            let loaded = resolve_instance(&args.instance)?;
            let inst = &loaded.instance;
            let p = read_path(&args.p, inst)?;
            let q = read_path(&args.q, inst)?;
            let need = |msg: &str| Error::PreconditionViolated(msg.into());
            let out = match (args.class, &loaded.representation) {
                (SolverClass::Permutation, Some(Representation::Permutation(rep))) => {
                    permutation_solve(rep, inst, &p, &q)?
                }
                (SolverClass::Permutation, _) => {
                    return Err(need("instance file lacks a `perm` block"))
                }
                (SolverClass::Circle, Some(Representation::Chords(rep))) => {
                    circle_solve(rep, inst, &p, &q)?
                }
                (SolverClass::Circle, _) => {
                    return Err(need("instance file lacks a `chords` block"))
                }
                (SolverClass::Arc, Some(Representation::Arcs(rep))) => {
                    circular_arc_solve(rep, inst, &p, &q)?
                }
                (SolverClass::Arc, _) => return Err(need("instance file lacks an `arcs` block")),
                (SolverClass::Hypercube, Some(Representation::Hypercube(rep))) => {
                    let seq = hypercube_solve(rep, inst.s(), inst.t(), &p, &q)?;
                    SolveOutcome {
                        reconfigurable: true,
                        sequence: Some(seq),
                        oracle_fallback: false,
                    }
                }
                (SolverClass::Hypercube, _) => {
                    return Err(need("instance file lacks a `hypercube` block"))
                }
                (SolverClass::WeaklyModular, _) => {
                    let wm = weakly_modular_solve(inst, &p, &q)?;
                    SolveOutcome {
                        reconfigurable: true,
                        sequence: Some(wm.sequence),
                        oracle_fallback: false,
                    }
                }
                (SolverClass::Bounded, _) => {
                    let params = BoundedParams {
                        c_max: usize::MAX,
                        path_cap: cap,
                    };
                    bounded_diameter_solve(inst, &p, &q, &params)?
                }
            };
            Ok(emit_outcome(&out, 1, cli.json))
        }
        Command::Oracle(args) => {
            let loaded = resolve_instance(&args.instance)?;
            let inst = &loaded.instance;
            let p = read_path(&args.p, inst)?;
            let q = read_path(&args.q, inst)?;
            let seq = shortest_reconfig_sequence(inst, &p, &q, args.k, cap)?;
            let out = SolveOutcome {
                reconfigurable: seq.is_some(),
                sequence: seq,
                oracle_fallback: false,
            };
            Ok(emit_outcome(&out, args.k, cli.json))
        }
        Command::Gen(cmd) => {
            let text = match cmd {
                GenCommand::Chain { g, l } => {
                    if g == 0 || l == 0 {
                        return Err(Error::PreconditionViolated(
                            "g and l must be positive".into(),
                        ));
                    }
                    format_instance(&gadget_chain(g, l), None)
                }
                GenCommand::Hypercube { d, s, t } => {
                    let loaded = resolve_instance(&format!("gen:hypercube:{d}:{s}:{t}"))?;
                    format_instance(&loaded.instance, loaded.representation.as_ref())
                }
                GenCommand::Linegraph { file, k } => {
                    let loaded = resolve_instance(&file)?;
                    let paths = loaded.instance.enumerate_shortest_paths(cap)?;
                    let p = paths.first().ok_or(Error::EmptyGraph)?;
                    let (red, _, _) = kspr_line_instance(&loaded.instance, p, p, k)?;
                    format_instance(&red.instance, None)
                }
                GenCommand::Power { file, k } => {
                    if k == 0 {
                        return Err(Error::PreconditionViolated("k must be positive".into()));
                    }
                    let loaded = resolve_instance(&file)?;
                    let powered = graph_power(loaded.instance.graph(), k);
                    let inst =
                        StInstance::new(powered, loaded.instance.s(), loaded.instance.t())?;
                    format_instance(&inst, None)
                }
                GenCommand::Subdivide { file, l } => {
                    let loaded = resolve_instance(&file)?;
                    let sub = subdivide_uniform(loaded.instance.graph(), l);
                    let inst = StInstance::new(sub, loaded.instance.s(), loaded.instance.t())?;
                    format_instance(&inst, None)
                }
            };
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let exhaustive = args.trials == "exhaustive";
            let trials: u64 = if exhaustive {
                0
            } else {
                args.trials
                    .parse()
                    .map_err(|_| Error::PreconditionViolated("bad --trials".into()))?
            };
            let n = args.n.max(4);
            let salt = cli.seed;
            let out = match args.class {
                SolverClass::Permutation => sweeps::sweep_permutation(
                    4,
                    n,
                    if exhaustive { 100 } else { trials },
                    salt,
                    200,
                )?,
                SolverClass::Circle => {
                    sweeps::sweep_circle(4, n, if exhaustive { 100 } else { trials }, salt, 200)?
                }
                SolverClass::Arc => sweeps::sweep_circular_arc(
                    4,
                    n,
                    if exhaustive { 50 } else { trials },
                    salt,
                    200,
                )?,
                SolverClass::WeaklyModular => {
                    sweeps::sweep_interval(n, if exhaustive { 300 } else { trials }, salt, 200)?
                }
                SolverClass::Hypercube => sweeps::sweep_hypercube(n.min(5) as u32, cap)?,
                SolverClass::Bounded => {
                    return Err(Error::PreconditionViolated(
                        "bounded is oracle-backed; nothing to verify against".into(),
                    ))
                }
            };
            let agreement = if out.agreement_ok() { "100%" } else { "FAILED" };
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "instances": out.instances,
                        "pairs": out.pairs,
                        "sequences_checked": out.sequences_checked,
                        "oracle_fallbacks": out.oracle_fallbacks,
                        "skipped_cap": out.skipped_cap,
                        "mismatches": out.mismatches,
                        "agreement": agreement,
                    })
                );
            } else {
                println!(
                    "instances {} pairs {} sequences {} fallbacks {} skipped {} agreement {}",
                    out.instances,
                    out.pairs,
                    out.sequences_checked,
                    out.oracle_fallbacks,
                    out.skipped_cap,
                    agreement
                );
                for m in &out.mismatches {
                    println!("MISMATCH {m}");
                }
            }
            Ok(if out.agreement_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Count { instance } => {
            let loaded = resolve_instance(&instance)?;
            let count = loaded.instance.count_shortest_paths();
            if cli.json {
                println!("{}", json!({"count": count.to_string()}));
            } else {
                println!("{count}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Diameter { k, instance } => {
            let loaded = resolve_instance(&instance)?;
            match reconfig_diameter(&loaded.instance, k, cap)? {
                Diameter::Finite(d) => {
                    if cli.json {
                        println!("{}", json!({"diameter": d}));
                    } else {
                        println!("{d}");
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Diameter::Infinite => {
                    if cli.json {
                        println!("{}", json!({"diameter": "infinite"}));
                    } else {
                        println!("infinite");
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Cost(cmd) => run_cost(cmd, cap, cli.json),
    }
}

fn parse_cost_file(file: &str) -> Result<CostModel, Error> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{file}: {e}"),
    })?;
    let mut entries = Vec::new();
    for tok in text.split_whitespace() {
        let bad = || Error::Parse {
            line: 0,
            msg: format!("bad cost entry {tok:?}"),
        };
        let cost = if let Some((a, b)) = tok.split_once('/') {
            let num: num_bigint::BigInt = a.parse().map_err(|_| bad())?;
            let den: num_bigint::BigInt = b.parse().map_err(|_| bad())?;
            Cost::new(num, den)
        } else {
            Cost::from_integer(tok.parse().map_err(|_| bad())?)
        };
        entries.push(cost);
    }
    CostModel::new(entries)
}

fn run_cost(cmd: CostCommand, cap: usize, json: bool) -> Result<ExitCode, Error> {
    let emit = |label: &str, out: &spr_core::cost::CostedSequence| -> ExitCode {
        if json {
            println!(
                "{}",
                json!({
                    "variant": label,
                    "objective": out.objective.to_string(),
                    "total": out.total.to_string(),
                    "max": out.max.to_string(),
                    "steps": out.sequence.len(),
                    "stages": out.sequence.stages(),
                })
            );
        } else {
            println!("objective {}", out.objective);
            // block steps may be any width; render with k = n
            let k = out
                .sequence
                .stages()
                .first()
                .map(|s| s.len())
                .unwrap_or(1);
            print_sequence(&out.sequence, k);
        }
        ExitCode::SUCCESS
    };
    match cmd {
        CostCommand::Minsum(args) => {
            let loaded = resolve_instance(&args.instance)?;
            let p = read_path(&args.p, &loaded.instance)?;
            let q = read_path(&args.q, &loaded.instance)?;
            let costs = parse_cost_file(&args.costs)?;
            let out = min_sum(&loaded.instance, &p, &q, &costs, cap)?.expect("always feasible");
            Ok(emit("minsum", &out))
        }
        CostCommand::Minmax(args) => {
            let loaded = resolve_instance(&args.instance)?;
            let p = read_path(&args.p, &loaded.instance)?;
            let q = read_path(&args.q, &loaded.instance)?;
            let costs = parse_cost_file(&args.costs)?;
            let out = min_max(&loaded.instance, &p, &q, &costs, cap)?.expect("always feasible");
            Ok(emit("minmax", &out))
        }
        CostCommand::Mintop(args) => {
            let loaded = resolve_instance(&args.instance)?;
            let p = read_path(&args.p, &loaded.instance)?;
            let q = read_path(&args.q, &loaded.instance)?;
            let costs = parse_cost_file(&args.costs)?;
            let l = if args.l == "inf" {
                TopL::Unbounded
            } else {
                TopL::Bounded(args.l.parse().map_err(|_| {
                    Error::PreconditionViolated("--l must be a positive integer or `inf`".into())
                })?)
            };
            let out =
                min_top_l(&loaded.instance, &p, &q, &costs, l, cap)?.expect("always feasible");
            Ok(emit("mintop", &out))
        }
        CostCommand::Reduc(args) => {
            let loaded = resolve_instance(&args.instance)?;
            let p = read_path(&args.p, &loaded.instance)?;
            let q = read_path(&args.q, &loaded.instance)?;
            let verdict = reduc_decide(&loaded.instance, &p, &q, args.l, cap)?;
            if json {
                println!("{}", json!({"verdict": if verdict { "yes" } else { "no" }}));
            } else {
                println!("verdict {}", if verdict { "yes" } else { "no" });
            }
            Ok(if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
