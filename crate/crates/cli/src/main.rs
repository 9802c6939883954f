//! `triplesim` command-line driver.
//!
//! Exit codes: 0 when the match is nonempty (or the command succeeded),
//! 1 when it is empty, 2 on invalid input.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use triplesim_core::harness::{self, BenchConfig};
use triplesim_core::report::{self, Semantics};
use triplesim_core::triple_sim::{inspect_children, inspect_parents, triple_relation};
use triplesim_core::{
    dual_simulation, io as gio, maximum_matching, oracle, AuxStructures, Graph, LocalityOptions,
    PatternGraph, SimRelation,
};

#[derive(Parser)]
#[command(
    name = "triplesim",
    version,
    about = "Graph pattern matching under simulation semantics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Match a pattern against a data graph.
    Match(MatchArgs),
    /// Time the matchers on synthetic graphs and write CSV.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force reference computations for debugging fixtures.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct Inputs {
    /// Pattern file (`.graph` text or `.json`).
    #[arg(short = 'q', long = "pattern")]
    pattern: PathBuf,
    /// Data graph file (`.graph` text or `.json`).
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
}

impl Inputs {
    fn load(&self) -> Result<(PatternGraph, Graph)> {
        let q = gio::read_pattern(&self.pattern)
            .with_context(|| format!("reading pattern {}", self.pattern.display()))?;
        let g = gio::read_graph(&self.graph)
            .with_context(|| format!("reading data graph {}", self.graph.display()))?;
        Ok((q, g))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
    Dot,
}

#[derive(Args)]
struct MatchArgs {
    /// One of sim, dual, strong, triple, triple-local, iso.
    #[arg(long, value_parser = parse_semantics)]
    semantics: Semantics,
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Include work counters and wall time.
    #[arg(long)]
    stats: bool,
    /// Visit every data node as a ball center, not only those whose label
    /// occurs in the pattern.
    #[arg(long)]
    no_center_prune: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SimChoice {
    Potential,
    Dual,
    Triple,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Enumerate subgraph-isomorphism embeddings.
    Iso {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Maximum triple relation by exhaustive witness search.
    Triple {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Dump the inspecting bipartite graphs of one pattern/data pair as DOT,
    /// with a maximum matching in bold.
    Bipartite {
        #[command(flatten)]
        inputs: Inputs,
        /// Pattern node id.
        #[arg(long)]
        u: String,
        /// Data node id.
        #[arg(long)]
        v: String,
        /// Candidate sets used to build the graphs.
        #[arg(long, value_enum, default_value_t = SimChoice::Dual)]
        sim: SimChoice,
    },
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    s.parse()
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run_match(args: &MatchArgs) -> Result<u8> {
    let (q, g) = args.inputs.load()?;
    let opts = LocalityOptions {
        center_prune: !args.no_center_prune,
        ..LocalityOptions::default()
    };
    let mut rep = report::run_match(args.semantics, &q, &g, opts)?;
    if !args.stats {
        rep = rep.without_stats();
    }
    let text = match args.format {
        OutputFormat::Table => report::to_table(&rep),
        OutputFormat::Json => report::to_json(&rep) + "\n",
        OutputFormat::Dot => report::to_dot(&rep),
    };
    emit(&text)?;
    Ok(rep.exit_code() as u8)
}

fn run_bench(config: &PathBuf, out: Option<&PathBuf>) -> Result<u8> {
    let cfg = BenchConfig::load(config)
        .with_context(|| format!("loading bench config {}", config.display()))?;
    let rows = harness::run_bench_with(&cfg, |row| {
        eprintln!(
            "{:>8} nodes  {:<12} seed {:<4} {:>10.2} ms",
            row.data_nodes, row.semantics, row.seed, row.wall_ms
        );
    })?;
    match out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            harness::write_csv(&rows, BufWriter::new(file))?;
        }
        None => harness::write_csv(&rows, io::stdout().lock())?,
    }
    Ok(0)
}

fn named_relation(q: &PatternGraph, g: &Graph, rel: &Option<SimRelation>) -> String {
    match rel {
        Some(rel) => rel
            .to_named(q, g)
            .iter()
            .map(|(u, vs)| format!("{u}\t{}\n", vs.join(" ")))
            .collect(),
        None => "empty\n".to_string(),
    }
}

fn run_oracle(cmd: &OracleCommand) -> Result<u8> {
    match cmd {
        OracleCommand::Iso { inputs } => {
            let (q, g) = inputs.load()?;
            let embs = oracle::enumerate_isomorphisms(&q, &g)?;
            let mut lines: Vec<String> = embs
                .iter()
                .map(|e| {
                    let pairs: Vec<String> = e
                        .to_named(&q, &g)
                        .iter()
                        .map(|(u, v)| format!("{u}->{v}"))
                        .collect();
                    pairs.join(" ")
                })
                .collect();
            lines.sort();
            emit(&format!("embeddings {}\n", lines.len()))?;
            for l in &lines {
                emit(&format!("{l}\n"))?;
            }
            Ok(if embs.is_empty() { 1 } else { 0 })
        }
        OracleCommand::Triple { inputs } => {
            let (q, g) = inputs.load()?;
            let rel = oracle::brute_force_triple_relation(&q, &g)?;
            emit(&named_relation(&q, &g, &rel))?;
            Ok(if rel.is_some() { 0 } else { 1 })
        }
        OracleCommand::Bipartite { inputs, u, v, sim } => {
            let (q, g) = inputs.load()?;
            let (ui, vi) = (q.node(u)?, g.node(v)?);
            let rel = match sim {
                SimChoice::Potential => Some(SimRelation::potential(&q, &g)),
                SimChoice::Dual => dual_simulation(&q, &g)?,
                SimChoice::Triple => triple_relation(&q, &g),
            };
            let Some(rel) = rel else {
                bail!("the chosen relation is empty; try --sim potential");
            };
            let aux = AuxStructures::init(&q, &g, &rel);
            let children = inspect_children(&q, &g, &aux, &rel, ui, vi, q.is_quantified());
            let parents = inspect_parents(&q, &g, &aux, &rel, ui, vi);
            let mut complete = true;
            for (side, insp) in [("children", &children), ("parents", &parents)] {
                let m = maximum_matching(&insp.graph);
                let covered = m.len() == insp.graph.left_len();
                complete &= covered;
                emit(&format!(
                    "// {side}: |X|={} |Y|={} matching={} complete={covered}\n",
                    insp.graph.left_len(),
                    insp.graph.right_len(),
                    m.len()
                ))?;
                emit(&insp.to_dot(&q, &g, Some(&m)))?;
            }
            Ok(if complete { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Match(args) => run_match(args),
        Command::Bench { config, out } => run_bench(config, out.as_ref()),
        Command::Oracle(cmd) => run_oracle(cmd),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
