mod bench;
mod format;
mod record;
mod selftest;

use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use blockdel::approx::approx_bgvd_4_detailed;
use blockdel::bgvd::{solve_bgvd_with, BgvdError, BgvdStats};
use blockdel::gen::{generate, Profile};
use blockdel::kernel::{kernelize, replay, Verdict};
use blockdel::oracle::{brute_min_bvd, brute_min_wfvs, is_block_graph_naive};
use blockdel::wfvs::{solve_wfvs_with, WfvsError, WfvsOptions, WfvsStats};
use blockdel::{GraphError, MultiGraph, VertexId};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use format::{parse, serialize, Instance, Kind};
use record::ResultRecord;

#[derive(Parser)]
#[command(name = "blockdel", version, about = "Block graph vertex deletion and weighted feedback vertex set solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Solution budget; defaults to the budget in a wfvs header.
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Instance file, or `-` for standard input.
    #[arg(long, global = true, default_value = "-")]
    input: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Exact block graph vertex deletion.
    Solve,
    /// Exact minimum-weight feedback vertex set of size at most k.
    Wfvs,
    /// Factor-4 block graph vertex deletion.
    Approx,
    /// Reduce to an equivalent small instance.
    Kernelize {
        /// Write the rule trace here (text) and to `<path>.json`.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Brute-force optimum for small instances.
    Oracle,
    /// Print a generated instance file.
    Gen {
        #[arg(value_enum)]
        profile: GenProfile,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 3)]
        petals: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Run the planted benchmark suite.
    Bench {
        #[arg(long, default_value_t = 2)]
        k_min: usize,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        #[arg(long, default_value_t = 2)]
        per_k: usize,
    },
    /// Run a quick invariant suite against the oracles.
    Selftest {
        #[arg(long, default_value_t = 40)]
        cases: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenProfile {
    RandomGnp,
    PlantedBgvd,
    Flower,
    DisjointC4,
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl From<BgvdError> for Failure {
    fn from(e: BgvdError) -> Self {
        match e {
            BgvdError::Graph(g) => Failure::Input(g.to_string()),
            BgvdError::Wfvs(WfvsError::NegativeWeight(v)) => Failure::Input(format!("vertex {} has a negative weight", v.0 + 1)),
            other => Failure::Invariant(other.to_string()),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: &str) -> Result<(String, Instance), Failure> {
    let mut text = String::new();
    let name = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(e.to_string()))?;
        "stdin".to_string()
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        path.to_string()
    };
    let inst = parse(&text).map_err(|e| Failure::Input(e.to_string()))?;
    Ok((name, inst))
}

fn budget(cli: &Cli, inst: &Instance) -> Result<usize, Failure> {
    match (cli.k, inst.kind) {
        (Some(k), _) => Ok(k),
        (None, Kind::Wfvs { k }) => Ok(k),
        (None, Kind::Bgvd) => Err(Failure::Input("--k is required".into())),
    }
}

fn one_indexed(s: &BTreeSet<VertexId>) -> Vec<u32> {
    s.iter().map(|v| v.0 + 1).collect()
}

fn emit(cli: &Cli, rec: &ResultRecord) -> Result<(), Failure> {
    match cli.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(rec).unwrap()),
        OutputFormat::Text => print!("{}", rec.to_text()),
    }
    if rec.certified {
        Ok(())
    } else {
        Err(Failure::Invariant(format!("{} witness failed re-validation", rec.command)))
    }
}

fn simple(inst: &Instance) -> Result<MultiGraph, Failure> {
    inst.graph.graph.check_simple()?;
    Ok(inst.graph.graph.clone())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let start = Instant::now();
    match &cli.command {
        Command::Solve => {
            let (name, inst) = read_input(&cli.input)?;
            let k = budget(cli, &inst)?;
            let g = simple(&inst)?;
            let mut stats = BgvdStats::default();
            let sol = solve_bgvd_with(&g, k, &mut stats)?;
            let certified = sol.as_ref().map_or(true, |s| s.len() <= k && is_block_graph_naive(&g.without(s)));
            let mut rec = ResultRecord::new(name, "solve", Some(k), if sol.is_some() { "yes" } else { "no" });
            rec.witness = sol.as_ref().map(one_indexed).unwrap_or_default();
            rec.certified = certified;
            rec.stat("branch_nodes", json!(stats.nodes));
            rec.stat("restricted_calls", json!(stats.restricted_calls));
            rec.stat("wfvs_nodes", json!(stats.wfvs.nodes));
            rec.finish(start);
            emit(cli, &rec)
        }
        Command::Wfvs => {
            let (name, inst) = read_input(&cli.input)?;
            let k = budget(cli, &inst)?;
            let mut stats = WfvsStats::default();
            let sol = solve_wfvs_with(&inst.graph, k, &mut stats, &WfvsOptions::default()).map_err(|e| match e {
                WfvsError::NegativeWeight(v) => Failure::Input(format!("vertex {} has a negative weight", v.0 + 1)),
                other => Failure::Invariant(other.to_string()),
            })?;
            let mut rec = ResultRecord::new(name, "wfvs", Some(k), if sol.is_some() { "yes" } else { "no" });
            if let Some(s) = &sol {
                rec.witness = one_indexed(&s.set);
                rec.weight = Some(s.weight.to_string());
                rec.certified = s.set.len() <= k
                    && inst.graph.graph.without(&s.set).is_forest()
                    && inst.graph.total(&s.set) == s.weight;
            }
            rec.stat("disjoint_calls", json!(stats.disjoint_calls));
            rec.stat("nodes", json!(stats.nodes));
            rec.stat("leaves", json!(stats.leaves));
            rec.stat("measure_prunes", json!(stats.measure_prunes));
            rec.stat("base_cases", json!(stats.base_cases));
            rec.finish(start);
            emit(cli, &rec)
        }
        Command::Approx => {
            let (name, inst) = read_input(&cli.input)?;
            let g = simple(&inst)?;
            let a = approx_bgvd_4_detailed(&g)?;
            let mut rec = ResultRecord::new(name, "approx", cli.k, "yes");
            rec.witness = one_indexed(&a.solution);
            rec.certified = is_block_graph_naive(&g.without(&a.solution));
            rec.stat("packed_obstructions", json!(a.packing.len()));
            rec.stat("size", json!(a.solution.len()));
            rec.finish(start);
            emit(cli, &rec)
        }
        Command::Kernelize { trace } => {
            let (name, inst) = read_input(&cli.input)?;
            let k = budget(cli, &inst)?;
            let g = simple(&inst)?;
            let kr = kernelize(&g, k)?;
            let verdict = match kr.verdict() {
                Verdict::Reduced => "reduced",
                Verdict::TrivialYes => "trivial-yes",
                Verdict::TrivialNo => "trivial-no",
            };
            let mut rec = ResultRecord::new(name, "kernelize", Some(k), verdict);
            rec.certified = replay(&g, k, &kr.trace.entries).map_or(false, |(h, k2)| h == kr.graph && k2 == kr.k);
            if let Some(path) = trace {
                let mut text = String::new();
                for e in &kr.trace.entries {
                    text.push_str(&format!("{e}\n"));
                }
                text.push_str(&format!("VERDICT {verdict}\n"));
                std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                let mut json_path = path.clone().into_os_string();
                json_path.push(".json");
                std::fs::write(&json_path, serde_json::to_string_pretty(&kr.trace).unwrap())
                    .map_err(|e| Failure::Input(e.to_string()))?;
            }
            rec.stat("kernel_k", json!(kr.k));
            rec.stat("kernel", serde_json::to_value(&kr.stats).unwrap());
            rec.stat("rule_applications", json!(kr.trace.entries.len()));
            rec.finish(start);
            emit(cli, &rec)
        }
        Command::Oracle => {
            let (name, inst) = read_input(&cli.input)?;
            match inst.kind {
                Kind::Bgvd => {
                    let g = simple(&inst)?;
                    let (opt, s) = brute_min_bvd(&g).map_err(|e| Failure::Input(e.to_string()))?;
                    let verdict = match cli.k {
                        Some(k) if opt > k => "no",
                        Some(_) => "yes",
                        None => "optimal-size",
                    };
                    let mut rec = ResultRecord::new(name, "oracle", cli.k, verdict);
                    rec.witness = one_indexed(&s);
                    rec.certified = is_block_graph_naive(&g.without(&s));
                    rec.stat("optimum", json!(opt));
                    rec.finish(start);
                    emit(cli, &rec)
                }
                Kind::Wfvs { .. } => {
                    let k = budget(cli, &inst)?;
                    let best = brute_min_wfvs(&inst.graph, k).map_err(|e| Failure::Input(e.to_string()))?;
                    let mut rec = ResultRecord::new(name, "oracle", Some(k), if best.is_some() { "yes" } else { "no" });
                    if let Some((w, s)) = &best {
                        rec.witness = one_indexed(s);
                        rec.weight = Some(w.to_string());
                        rec.certified = inst.graph.graph.without(s).is_forest();
                    }
                    rec.finish(start);
                    emit(cli, &rec)
                }
            }
        }
        Command::Gen { profile, n, p, petals, t } => {
            let profile = match profile {
                GenProfile::RandomGnp => Profile::RandomGnp { n: *n, p: *p },
                GenProfile::PlantedBgvd => Profile::PlantedBgvd { n: *n, k: cli.k.unwrap_or(2) },
                GenProfile::Flower => Profile::Flower { petals: *petals },
                GenProfile::DisjointC4 => Profile::DisjointC4 { t: *t },
            };
            let g = generate(&profile, cli.seed).map_err(|e| Failure::Input(e.to_string()))?;
            let inst = Instance { kind: Kind::Bgvd, graph: blockdel::WeightedGraph::unit(g) };
            print!("{}", serialize(&inst));
            Ok(())
        }
        Command::Bench { k_min, k_max, per_k } => {
            let report = bench::run(*k_min, *k_max, *per_k, cli.seed).map_err(Failure::from)?;
            match cli.format {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                OutputFormat::Text => print!("{}", report.table()),
            }
            if report.violations.is_empty() {
                Ok(())
            } else {
                Err(Failure::Invariant(report.violations.join("; ")))
            }
        }
        Command::Selftest { cases } => {
            let report = selftest::run(*cases, cli.seed);
            match cli.format {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                OutputFormat::Text => print!("{}", report.text()),
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Invariant("selftest failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}
