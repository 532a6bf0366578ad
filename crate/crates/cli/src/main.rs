use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nash_core::arcs::{default_truncation, family_check, separation_check};
use nash_core::certificate::{certify_minimal, ProofStatus};
use nash_core::decompose::decompose_minimal;
use nash_core::generate::{random_minimal, rng_from_seed};
use nash_core::order::hasse_export;
use nash_core::report::AnalysisReport;
use nash_core::{relation_matrix, WeightedDualGraph};

/// Non-inclusion certificates for Nash arc families on resolution graphs.
///
/// Exit status: 0 when everything asked for is proven, 1 when pairs stay open
/// or a check fails, 2 on input errors.
#[derive(Parser)]
#[command(name = "nash", version)]
struct Cli {
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Definiteness, rationality, minimality, order table and certificate digest.
    Analyze { graph: PathBuf },
    /// Order relation table for every ordered pair of vertices.
    Order {
        graph: PathBuf,
        /// Emit the Hasse diagram as Graphviz text.
        #[arg(long)]
        dot: bool,
    },
    /// Certificate proving every non-inclusion on a minimal graph.
    CertifyMinimal { graph: PathBuf },
    /// Bamboo decomposition of a minimal graph for the pair (x, y).
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Emit the supergraph as Graphviz text.
        #[arg(long)]
        dot: bool,
    },
    /// Sample arcs of the family N_i on z^(n+1) = xy.
    AnArcs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        family: usize,
        /// Also check separation from this larger family index.
        #[arg(long)]
        against: Option<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Truncation order; defaults to 4(n+1).
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Order table of the built-in A_n graph.
    AnOrder {
        #[arg(long)]
        n: usize,
    },
    /// Print a built-in graph.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        /// Vertex count for a-n and d-n, maximum vertex count for random-minimal.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "a-n")]
    AN,
    E6,
    #[value(name = "d-n")]
    DN,
    RandomMinimal,
}

fn read_graph(path: &Path) -> Result<WeightedDualGraph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?
    };
    Ok(WeightedDualGraph::from_json(&text)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

fn run(cli: Cli) -> Result<u8> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Analyze { graph } => {
            let report = AnalysisReport::build(&read_graph(&graph)?)?;
            emit(out, &report.to_json())?;
            Ok(report.has_open_pairs() as u8)
        }
        Command::Order { graph, dot } => {
            let m = relation_matrix(&read_graph(&graph)?)?;
            emit(out, &if dot { hasse_export(&m) } else { pretty(&m) })?;
            Ok(!m.open_pairs().is_empty() as u8)
        }
        Command::CertifyMinimal { graph } => {
            let cert = certify_minimal(&read_graph(&graph)?)?;
            emit(out, &pretty(&cert))?;
            Ok((cert.count(ProofStatus::Open) > 0) as u8)
        }
        Command::Decompose { graph, x, y, dot } => {
            let g = read_graph(&graph)?;
            let cert = decompose_minimal(&g, g.index_of(&x)?, g.index_of(&y)?)?;
            emit(out, &if dot { cert.to_dot() } else { pretty(&cert) })?;
            Ok(!cert.verify(&g) as u8)
        }
        Command::AnArcs { n, family, against, samples, trunc, seed } => {
            let trunc = trunc.unwrap_or_else(|| default_truncation(n));
            let orders = family_check(n, family, samples, trunc, seed)?;
            let separation = against.map(|j| separation_check(n, family, j, samples, trunc, seed)).transpose()?;
            let pass = orders.pass && separation.as_ref().is_none_or(|s| s.pass);
            emit(out, &pretty(&json!({ "orders": orders, "separation": separation, "pass": pass })))?;
            Ok(!pass as u8)
        }
        Command::AnOrder { n } => {
            let m = relation_matrix(&WeightedDualGraph::a_n(n)?)?;
            emit(out, &pretty(&m))?;
            Ok(!m.open_pairs().is_empty() as u8)
        }
        Command::Generate { kind, n, seed } => {
            let g = match kind {
                Kind::AN => WeightedDualGraph::a_n(n)?,
                Kind::E6 => WeightedDualGraph::e6(),
                Kind::DN => WeightedDualGraph::d_n(n)?,
                Kind::RandomMinimal => {
                    if n < 2 {
                        bail!("random-minimal needs --n of at least 2");
                    }
                    eprintln!("seed: {seed}");
                    random_minimal(&mut rng_from_seed(seed), n, 2)
                }
            };
            emit(out, &g.to_json())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e:#}");
            ExitCode::from(2)
        }
    }
}
