//! The `bergelab` command: shadows, Berge containment, constructions,
//! classification, and exact cover-Turán search from the command line.
//!
//! Results go to stdout as JSON; diagnostics go to stderr. Exit codes:
//! 0 success (and exact results), 2 parse/validation errors, 3 budget
//! exhausted (a partial result is still emitted).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use bergelab_core::budget::Budget;
use bergelab_core::catalog::build_catalog;
use bergelab_core::classify::{cover_density_k, is_3_degenerate_cover};
use bergelab_core::constructions::{
    blowup, construct_h1, construct_h2, construct_turan, shrink, split_construction,
    LabeledConstruction, ShrinkMode,
};
use bergelab_core::embed::{
    contains_berge, contains_in_blowup, subgraph_contains, BergeOutcome, BlowupSpec,
};
use bergelab_core::io::{
    embedding_to_json, graph_to_json, hypergraph_to_json, parse_graph, parse_hypergraph,
    shadow_to_json,
};
use bergelab_core::search::{exact_cover_turan, SearchStatus};
use bergelab_core::{Error, Graph};

#[derive(Parser)]
#[command(name = "bergelab", version, about = "Berge hypergraph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the 2-shadow of a hypergraph with covering lists
    Shadow {
        /// Hypergraph JSON file, or - for stdin
        #[arg(short = 'H', long = "hypergraph")]
        hypergraph: String,
    },
    /// Decide Berge containment and emit a certificate if one exists
    Berge {
        #[arg(short = 'H', long = "hypergraph")]
        hypergraph: String,
        /// Pattern graph (JSON or graph6), or - for stdin
        #[arg(short = 'G', long = "graph")]
        graph: String,
        /// Wall-clock limit, e.g. 60s, 500ms, 2m
        #[arg(long)]
        budget: Option<String>,
        /// Search-node limit
        #[arg(long)]
        nodes: Option<u64>,
    },
    /// Plain (non-induced) subgraph containment between two graphs
    Subgraph {
        /// Host graph file, or - for stdin
        #[arg(short = 'i', long = "input")]
        host: String,
        #[arg(short = 'G', long = "graph")]
        graph: String,
    },
    /// Decide containment of a pattern in a generalized blowup
    BlowupContains {
        #[arg(short = 'G', long = "graph")]
        graph: String,
        /// Base graph file, or - for stdin
        #[arg(long)]
        base: String,
        #[command(flatten)]
        shape: BlowupShape,
    },
    /// Report the degeneracy conditions with witnesses
    Classify {
        #[arg(short = 'G', long = "graph")]
        graph: String,
        /// Compact single-line JSON instead of pretty-printed
        #[arg(long)]
        json: bool,
    },
    /// Density classification against k-uniform hosts
    Density {
        #[arg(short = 'G', long = "graph")]
        graph: String,
        #[arg(short = 'k', default_value_t = 3)]
        k: usize,
    },
    /// Generate one of the named constructions
    Construct {
        #[command(subcommand)]
        what: ConstructCommand,
    },
    /// Exact cover-Turán value with witness
    Exact {
        #[arg(short = 'n')]
        n: usize,
        /// Allowed edge cardinalities, e.g. -R 3 or -R 3,4
        #[arg(short = 'R', value_delimiter = ',', required = true)]
        r: Vec<usize>,
        #[arg(short = 'G', long = "graph")]
        graph: String,
        #[arg(long)]
        budget: Option<String>,
        #[arg(long)]
        nodes: Option<u64>,
        /// Worker threads (default: BERGELAB_THREADS, then all cores)
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Shrink every hyperedge to m vertices
    Shrink(ShrinkArgs),
    /// Classify all small graphs into a JSON-lines catalog
    Catalog {
        #[arg(long = "max-n")]
        max_n: usize,
        /// Output path
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Matched-pair family with no Berge triangle (n ≡ 0 mod 4)
    H1 {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Hub family whose shadow minus the hub is complete bipartite
    H2 {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Transversal k-sets over t equitable parts
    Turan {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 't')]
        t: usize,
    },
    /// Materialize a generalized blowup as a graph
    Blowup {
        /// Base graph file, or - for stdin
        #[arg(long)]
        base: String,
        #[command(flatten)]
        shape: BlowupShape,
    },
    /// Split each left-part vertex of a bipartite graph into a pair
    Split {
        #[arg(short = 'G', long = "graph")]
        graph: String,
        /// Left part as comma-separated vertex ids
        #[arg(long = "part-a", value_delimiter = ',', required = true)]
        part_a: Vec<usize>,
    },
    /// Same as the top-level shrink command
    Shrink(ShrinkArgs),
}

#[derive(Args)]
struct BlowupShape {
    /// Fiber sizes, e.g. --sizes 1,3,3,3,3
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Base edges carrying matching semantics, e.g. --matching-edges 0-1,2-3
    #[arg(long = "matching-edges", value_delimiter = ',')]
    matching_edges: Vec<String>,
}

#[derive(Args)]
struct ShrinkArgs {
    #[arg(short = 'H', long = "hypergraph")]
    hypergraph: String,
    /// Target cardinality
    #[arg(short = 'm')]
    m: usize,
    /// Seed for the randomized mode (conflicts with --derandomized)
    #[arg(long, conflicts_with = "derandomized")]
    seed: Option<u64>,
    /// Conditional-expectation mode with the half-shadow guarantee
    #[arg(long)]
    derandomized: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("bergelab: {err}");
            match err {
                Error::BudgetExhausted => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_graph(path: &str) -> Result<Graph, Error> {
    parse_graph(&read_input(path)?)
}

fn parse_budget(budget: &Option<String>, nodes: Option<u64>) -> Result<Budget, Error> {
    let time = match budget {
        None => None,
        Some(s) => Some(parse_duration(s)?),
    };
    Ok(Budget { time, nodes })
}

fn parse_duration(s: &str) -> Result<Duration, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad duration {s:?} (try 60s, 500ms, 2m)"));
    if let Some(ms) = t.strip_suffix("ms") {
        return Ok(Duration::from_millis(ms.trim().parse().map_err(|_| bad())?));
    }
    if let Some(secs) = t.strip_suffix('s') {
        return Ok(Duration::from_secs(secs.trim().parse().map_err(|_| bad())?));
    }
    if let Some(mins) = t.strip_suffix('m') {
        let m: u64 = mins.trim().parse().map_err(|_| bad())?;
        return Ok(Duration::from_secs(m * 60));
    }
    Ok(Duration::from_secs(t.parse().map_err(|_| bad())?))
}

fn parse_matching_edges(specs: &[String]) -> Result<Vec<(usize, usize)>, Error> {
    specs
        .iter()
        .map(|s| {
            let (a, b) = s
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad matching edge {s:?} (expected u-v)")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad matching edge {s:?}")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

fn blowup_spec(base_path: &str, shape: &BlowupShape) -> Result<BlowupSpec, Error> {
    let base = load_graph(base_path)?;
    let medges = parse_matching_edges(&shape.matching_edges)?;
    BlowupSpec::new(base, shape.sizes.clone(), medges)
}

fn construction_json(c: &LabeledConstruction) -> serde_json::Value {
    serde_json::json!({
        "hypergraph": hypergraph_to_json(&c.hypergraph),
        "labels": c.labels,
    })
}

fn emit(value: &serde_json::Value) {
    println!("{value}");
}

fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("BERGELAB_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

fn run_shrink(args: &ShrinkArgs) -> Result<ExitCode, Error> {
    let h = parse_hypergraph(&read_input(&args.hypergraph)?)?;
    let mode = match (args.derandomized, args.seed) {
        (true, _) => ShrinkMode::Derandomized,
        (false, Some(seed)) => ShrinkMode::Seeded(seed),
        (false, None) => {
            return Err(Error::Validation(
                "choose --derandomized or --seed <N>".into(),
            ))
        }
    };
    let shrunk = shrink(&h, args.m, mode)?;
    emit(&hypergraph_to_json(&shrunk));
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Shadow { hypergraph } => {
            let h = parse_hypergraph(&read_input(&hypergraph)?)?;
            emit(&shadow_to_json(&h.shadow()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Berge {
            hypergraph,
            graph,
            budget,
            nodes,
        } => {
            let h = parse_hypergraph(&read_input(&hypergraph)?)?;
            let g = load_graph(&graph)?;
            let budget = parse_budget(&budget, nodes)?;
            match contains_berge(&h, &g, &budget) {
                BergeOutcome::Found(emb) => {
                    emit(&serde_json::json!({
                        "outcome": "found",
                        "embedding": embedding_to_json(&emb),
                    }));
                    Ok(ExitCode::SUCCESS)
                }
                BergeOutcome::Absent => {
                    emit(&serde_json::json!({ "outcome": "absent" }));
                    Ok(ExitCode::SUCCESS)
                }
                BergeOutcome::Unknown => {
                    emit(&serde_json::json!({ "outcome": "unknown" }));
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Subgraph { host, graph } => {
            let host = load_graph(&host)?;
            let g = load_graph(&graph)?;
            match subgraph_contains(&host, &g) {
                Some(map) => emit(&serde_json::json!({ "found": true, "map": map })),
                None => emit(&serde_json::json!({ "found": false })),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::BlowupContains { graph, base, shape } => {
            let g = load_graph(&graph)?;
            let spec = blowup_spec(&base, &shape)?;
            match contains_in_blowup(&g, &spec) {
                Some(phi) => emit(&serde_json::json!({ "found": true, "assignment": phi })),
                None => emit(&serde_json::json!({ "found": false })),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { graph, json } => {
            let g = load_graph(&graph)?;
            let report = is_3_degenerate_cover(&g)?;
            let value = serde_json::to_value(&report)?;
            if json {
                println!("{value}");
            } else {
                println!("{value:#}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Density { graph, k } => {
            let g = load_graph(&graph)?;
            let report = cover_density_k(&g, k)?;
            emit(&serde_json::to_value(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct { what } => match what {
            ConstructCommand::H1 { n } => {
                emit(&construction_json(&construct_h1(n)?));
                Ok(ExitCode::SUCCESS)
            }
            ConstructCommand::H2 { n } => {
                emit(&construction_json(&construct_h2(n)?));
                Ok(ExitCode::SUCCESS)
            }
            ConstructCommand::Turan { n, k, t } => {
                emit(&construction_json(&construct_turan(n, k, t)?));
                Ok(ExitCode::SUCCESS)
            }
            ConstructCommand::Blowup { base, shape } => {
                let spec = blowup_spec(&base, &shape)?;
                emit(&graph_to_json(&blowup(&spec)));
                Ok(ExitCode::SUCCESS)
            }
            ConstructCommand::Split { graph, part_a } => {
                let g = load_graph(&graph)?;
                emit(&construction_json(&split_construction(&g, &part_a)?));
                Ok(ExitCode::SUCCESS)
            }
            ConstructCommand::Shrink(args) => run_shrink(&args),
        },
        Command::Shrink(args) => run_shrink(&args),
        Command::Exact {
            n,
            r,
            graph,
            budget,
            nodes,
            threads,
        } => {
            let g = load_graph(&graph)?;
            let budget = parse_budget(&budget, nodes)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(thread_count(threads))
                .build()
                .map_err(|e| Error::Validation(format!("thread pool: {e}")))?;
            let result = pool.install(|| exact_cover_turan(n, r, &g, &budget))?;
            emit(&serde_json::json!({
                "value": result.value,
                "status": result.status,
                "witness": hypergraph_to_json(&result.witness),
                "nodes": result.nodes,
                "elapsed_ms": result.elapsed.as_millis() as u64,
            }));
            match result.status {
                SearchStatus::Exact => Ok(ExitCode::SUCCESS),
                SearchStatus::LowerBoundOnly => Ok(ExitCode::from(3)),
            }
        }
        Command::Catalog { max_n, out } => {
            let count = build_catalog(max_n, &out)?;
            emit(&serde_json::json!({ "records": count, "path": out }));
            Ok(ExitCode::SUCCESS)
        }
    }
}
