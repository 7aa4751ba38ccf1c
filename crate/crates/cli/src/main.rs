//! `catherd`: solve, classify, prune, verify and play Cat Herding.

mod play;

use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use catherd::budget::Budget;
use catherd::classifier::{classify, Verdict};
use catherd::infinite::{designated_cat, run_challenge, InfiniteFamily};
use catherd::pruning::{prune_with, RuleSet};
use catherd::registry::StrategyRegistry;
use catherd::solver::{Solver, SolverConfig};
use catherd::structure::{evadibility_report, two_edge_connected_components};
use catherd::verify::{run_suites, Suite, VerifyConfig};
use catherd::{load_graph, Graph};
use catherd_service::{EngineLevel, Role, ServeOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 runtime error.
enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

#[derive(Parser)]
#[command(name = "catherd", version, about = "Exact play and analysis for the Cat Herding game")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cat number of a graph, or of one start vertex.
    Solve {
        /// Generator spec (`path:8`) or edge-list file.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long)]
        all_vertices: bool,
        /// Let the herder cut outside the cat's component too.
        #[arg(long)]
        no_component_restriction: bool,
    },
    /// Cat number 0..=3 or at least 4, by pruning and catalog lookup.
    Classify {
        #[arg(long)]
        graph: String,
    },
    /// Apply value-preserving reductions.
    Prune {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
        #[arg(long, value_enum, default_value_t = Rules::Conservative)]
        rules: Rules,
    },
    /// Longest path, cycle packing, herder bound and 2-edge-connected blocks.
    Structure {
        #[arg(long)]
        graph: String,
        /// Also solve the graph exactly.
        #[arg(long)]
        exact: bool,
    },
    /// Run verification suites; exits 1 if any fails.
    Verify {
        /// Comma list of suites, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// k-evadibility challenge on an infinite family.
    Challenge {
        #[arg(long)]
        generator: String,
        /// Defaults to the family's designated strategy.
        #[arg(long)]
        cat: Option<String>,
        #[arg(long, default_value = "cut_last_edge")]
        herder: String,
        #[arg(long)]
        k: usize,
        /// Seed for a `random` herder given without one.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Play against the engine in the terminal.
    Play {
        #[arg(long)]
        graph: String,
        #[arg(long = "as", value_enum)]
        side: Side,
        #[arg(long)]
        hints: bool,
        #[arg(long, default_value = "optimal")]
        level: String,
    },
    /// Start the HTTP session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// Load sessions from this file at start, save them on shutdown.
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rules {
    /// Duplicate leaves only.
    Graph,
    /// Duplicate leaves plus both tree rules.
    Tree,
    Conservative,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum Side {
    Cat,
    Herder,
}

fn read_graph(arg: &str) -> Result<Graph, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    load_graph(&text).map_err(|e| usage(format!("bad graph `{arg}`: {e}")))
}

fn print_json(value: &impl serde::Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let budget = Budget::from_env().map_err(usage)?;
    let cfg = budget.solver_config();
    let json = cli.json;
    match cli.command {
        Command::Solve { graph, vertex, all_vertices, no_component_restriction } => {
            let g = read_graph(&graph)?;
            let cfg = SolverConfig { restrict_to_component: !no_component_restriction, ..cfg };
            let mut solver = Solver::new(&g, cfg).context("solver")?;
            if let Some(v) = vertex {
                let value = solver.value_from(&g.full_mask(), v).map_err(usage)?;
                if json {
                    print_json(&json!({ "vertex": v, "value": value }))?;
                } else {
                    println!("{value}");
                }
            } else {
                let values = solver.vertex_values();
                let best = values.iter().copied().max().unwrap_or(0);
                if json {
                    let mut out = json!({ "cat_number": best });
                    if all_vertices {
                        out["values"] = json!(values);
                    }
                    print_json(&out)?;
                } else {
                    println!("{best}");
                    if all_vertices {
                        for (v, x) in values.iter().enumerate() {
                            println!("  {v}: {x}");
                        }
                    }
                }
            }
        }
        Command::Classify { graph } => {
            let g = read_graph(&graph)?;
            let c = classify(&g).map_err(usage)?;
            if json {
                print_json(&c)?;
            } else {
                let verdict = match c.verdict {
                    Verdict::Cut0 => "Cut0",
                    Verdict::Cut1 => "Cut1",
                    Verdict::Cut2 => "Cut2",
                    Verdict::Cut3 => "Cut3",
                    Verdict::AtLeast4 => "AtLeast4",
                };
                match (&c.family, &c.catalog_id) {
                    (Some(f), Some(id)) => println!("{verdict}/{f} ({id})"),
                    _ => println!("{verdict}"),
                }
                if let Some(w) = &c.witness {
                    println!("witness: {}", serde_json::to_string(w).context("witness")?);
                }
            }
        }
        Command::Prune { graph, emit, rules } => {
            let g = read_graph(&graph)?;
            let rules = match rules {
                Rules::Graph => RuleSet::Graph,
                Rules::Tree => RuleSet::Tree,
                Rules::Conservative => RuleSet::Conservative,
            };
            let report = prune_with(&g, rules).map_err(usage)?;
            match (emit, json) {
                (Emit::Json, _) | (Emit::Text, true) => print_json(&report)?,
                (Emit::Dot, _) => print!("{}", report.graph.to_dot(&report.graph.full_mask())),
                (Emit::Text, false) => {
                    println!("{} steps; {} -> {} vertices", report.steps.len(), g.n(), report.graph.n());
                    for s in &report.steps {
                        println!("  {:?} removed {:?}", s.rule, s.removed);
                    }
                    print!("{}", report.graph.to_edge_list());
                }
            }
        }
        Command::Structure { graph, exact } => {
            let g = read_graph(&graph)?;
            let report = evadibility_report(&g, exact).map_err(usage)?;
            let blocks = two_edge_connected_components(&g);
            if json {
                print_json(&json!({ "evadibility": report, "blocks": blocks }))?;
            } else {
                println!("longest path: {} vertices", report.longest_path);
                println!("max edge-disjoint cycles: {} (at {:?})", report.max_cycles, report.cycle_hub);
                println!("threshold k = {}, herder bound {}", report.threshold, report.bound);
                if let Some(c) = report.exact_cut {
                    println!("cat number: {c}");
                }
                println!("2-edge-connected blocks: {}", blocks.components.len());
                for b in &blocks.bridges {
                    println!("  bridge {}-{}", b.endpoints.0, b.endpoints.1);
                }
            }
        }
        Command::Verify { suite, max_n, max_m, seed } => {
            let suites = Suite::parse_list(&suite).map_err(usage)?;
            let mut vc = VerifyConfig { max_n, max_m, solver: cfg, ..VerifyConfig::default() };
            if let Some(s) = seed {
                vc.seed = s;
            }
            let reports = run_suites(&suites, &vc);
            if json {
                print_json(&reports)?;
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            if reports.iter().any(|r| !r.passed) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Challenge { generator, cat, herder, k, seed } => {
            let family: InfiniteFamily = generator.parse().map_err(usage)?;
            let reg = StrategyRegistry::with_builtins();
            let mut cat = match cat {
                Some(spec) => reg.infinite_cat(&spec).map_err(usage)?,
                None => designated_cat(family, k.min(16) as u32),
            };
            let herder = if herder.trim() == "random" { format!("random:{seed}") } else { herder };
            let mut herder = reg.infinite_herder(&herder).map_err(usage)?;
            if k == 0 {
                return Err(usage("--k must be at least 1"));
            }
            let result = run_challenge(family, cat.as_mut(), herder.as_mut(), k, budget.vertices).context("challenge")?;
            if json {
                print_json(&result)?;
            } else {
                println!("{}", result.transcript());
            }
        }
        Command::Play { graph, side, hints, level } => {
            let g = read_graph(&graph)?;
            let level: EngineLevel = level.parse().map_err(usage)?;
            let role = match side {
                Side::Cat => Role::Cat,
                Side::Herder => Role::Herder,
            };
            let stdin = std::io::stdin();
            play::run(g, role, level, hints, &cfg, stdin.lock(), std::io::stdout())?;
        }
        Command::Serve { port, host, static_dir, snapshot } => {
            let opts = ServeOptions { addr: Some(SocketAddr::new(host, port)), static_dir, snapshot, cfg };
            let rt = tokio::runtime::Runtime::new().context("runtime")?;
            rt.block_on(catherd_service::serve(opts)).context("serve")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
