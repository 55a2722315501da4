//! `ramsey`: command-line front end for the construction and search library.
//!
//! Randomness comes only from `--seed` (or `RAMSEY_SEED`): `stepup-base` and
//! `expander-gen` use it as their generator seed, `expander-check --sampled`
//! uses it to draw the sampled pairs. Timings are reported as 0 unless
//! `--timing` is given, so identical arguments give identical stdout.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ramsey_core::bitcore::{delta, tower};
use ramsey_core::expander::{check_edge_distribution, check_max_degree, generate, CheckMode, ExpanderParams};
use ramsey_core::hypergraph::{read_graph, read_hypergraph, Graph};
use ramsey_core::pathhyper::path_hypergraph;
use ramsey_core::search::{
    extremal_number_small, find_mono_copy, max_mono_clique, ramsey_number_small, verify_lower_bound_instance,
    CopyOutcome, RamseyPattern, SearchBudget, SearchError,
};
use ramsey_core::stepup::{
    random_base_coloring, read_base_coloring, verify_base, write_base_coloring, write_window_dump, BaseColoring,
    EdgeColoring, DEFAULT_ATTEMPTS,
};
use ramsey_core::strongcolor::{greedy_strong_coloring, read_partition, validate_strong_coloring, BoundCheck};
use ramsey_core::Label;

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Hypergraph Ramsey constructions and checkers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "RAMSEY_SEED", default_value_t = 0)]
    seed: u64,
    /// Node budget for searches.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget_nodes: u64,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Input file; standard input when absent.
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Report real elapsed times instead of 0.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// tw_k(x).
    Tower { k: u32, x: f64 },
    /// Highest differing bit of two labels.
    Delta { x: Label, y: Label },
    /// Color of a k-set under the base (read from --in) stepped up to k.
    StepupEval {
        #[arg(long)]
        k: usize,
        /// Print the colors of every k-subset of the labels instead.
        #[arg(long)]
        dump: bool,
        #[arg(required = true)]
        labels: Vec<Label>,
    },
    /// Sample a base coloring without monochromatic K_n, or verify one.
    StepupBase {
        /// Forbidden clique size.
        #[arg(long)]
        clique: usize,
        /// Vertex count; defaults to floor(2^{n/2}).
        #[arg(long)]
        n2: Option<usize>,
        /// Check the coloring read from --in instead of sampling one.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
        attempts: u64,
    },
    /// Greedy strong coloring of a JSON hypergraph.
    Strongcolor {
        /// Validate this partition instead of computing one.
        #[arg(long)]
        validate: Option<PathBuf>,
    },
    /// Trimmed random graph G(M, d/M).
    ExpanderGen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: f64,
    },
    /// Degree and edge-distribution report for a JSON graph.
    ExpanderCheck {
        #[arg(long)]
        d: f64,
        /// Sample this many pairs instead of checking exhaustively.
        #[arg(long)]
        sampled: Option<usize>,
    },
    /// Path hypergraph H(G, k) of a JSON graph.
    Pathhyper {
        #[arg(long)]
        k: usize,
    },
    #[command(subcommand)]
    Search(SearchCommand),
    /// Smallest N forcing a monochromatic copy.
    Ramsey {
        #[arg(long, conflicts_with = "pattern", required_unless_present = "pattern")]
        clique: Option<usize>,
        /// JSON hypergraph pattern.
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// ex(n, K_{s_1,..,s_t}).
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    /// Look for a monochromatic H(G, k) in the stepped base coloring (--in).
    VerifyPipeline {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// JSON graph G; the Petersen graph when absent.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        window: WindowArgs,
    },
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Monochromatic copy of a pattern in the stepped base coloring (--in).
    MonoCopy {
        #[arg(long)]
        k: usize,
        /// JSON hypergraph pattern.
        #[arg(long)]
        pattern: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Largest monochromatic clique in the stepped base coloring (--in).
    MaxClique {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        window: WindowArgs,
    },
}

#[derive(Args)]
struct WindowArgs {
    /// Comma-separated labels.
    #[arg(long, value_delimiter = ',', conflicts_with = "window_size")]
    window: Option<Vec<Label>>,
    /// Use the labels 0..W.
    #[arg(long)]
    window_size: Option<u64>,
}

impl WindowArgs {
    fn labels(&self) -> Option<Vec<Label>> {
        match (&self.window, self.window_size) {
            (Some(w), _) => Some(w.clone()),
            (None, Some(size)) => Some((0..size).map(Label::from).collect()),
            (None, None) => None,
        }
    }

    /// Explicit window, or the whole universe when that is small.
    fn resolve(&self, c: &EdgeColoring) -> Result<Vec<Label>> {
        if let Some(w) = self.labels() {
            return Ok(w);
        }
        let size: u64 = c
            .universe_size()
            .try_into()
            .ok()
            .filter(|&s| s <= 1 << 12)
            .context("the universe is too large; pass --window or --window-size")?;
        Ok((0..size).map(Label::from).collect())
    }
}

/// How a successful run ended.
enum Status {
    Ok,
    Failed,
    Budget,
}

struct Output {
    /// Printed on stdout; the JSON document when `None`.
    text: Option<String>,
    json: Value,
    status: Status,
}

impl Output {
    fn json(json: Value) -> Self {
        Output {
            text: None,
            json,
            status: Status::Ok,
        }
    }

    fn scalar(text: String, json: Value) -> Self {
        Output {
            text: Some(text),
            json,
            status: Status::Ok,
        }
    }

    fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match emit(&cli.global, &out) {
            Ok(()) => match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Failed => ExitCode::from(1),
                Status::Budget => ExitCode::from(3),
            },
            Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            if matches!(e.downcast_ref::<SearchError>(), Some(SearchError::Budget { .. })) {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

/// A reader that stops early (`| head`) is not an error.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>()
        .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn emit(global: &Global, out: &Output) -> Result<()> {
    let doc = serde_json::to_string(&out.json)?;
    let mut stdout = io::stdout().lock();
    match &out.text {
        Some(text) => writeln!(stdout, "{text}")?,
        None => writeln!(stdout, "{doc}")?,
    }
    if let Some(path) = &global.json_out {
        std::fs::write(path, format!("{doc}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn open(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("opening {}", p.display()))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

fn base_from_input(global: &Global) -> Result<BaseColoring> {
    Ok(read_base_coloring(open(global.input.as_deref())?)?)
}

fn stepped(global: &Global, k: usize) -> Result<EdgeColoring> {
    Ok(EdgeColoring::stepped(base_from_input(global)?, k)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    let budget = SearchBudget::nodes(g.budget_nodes);
    let ms = |elapsed: std::time::Duration| if g.timing { elapsed.as_millis() as u64 } else { 0 };
    match &cli.command {
        Command::Tower { k, x } => {
            let v = tower(*k, *x)?;
            Ok(Output::scalar(v.to_string(), json!({ "value": v.to_string() })))
        }
        Command::Delta { x, y } => {
            let d = delta(x, y)?;
            Ok(Output::scalar(d.to_string(), json!({ "delta": d })))
        }
        Command::StepupEval { k, dump, labels } => {
            let c = stepped(g, *k)?;
            if *dump {
                let mut buf = Vec::new();
                write_window_dump(&c, labels, &mut buf)?;
                let text = String::from_utf8(buf)?.trim_end().to_string();
                let rows: Vec<Value> = text.lines().map(|l| Value::String(l.to_string())).collect();
                return Ok(Output::scalar(text, json!({ "rows": rows })));
            }
            let color = c.color_of(labels)?;
            Ok(Output::scalar(color.to_string(), json!({ "color": color })))
        }
        Command::StepupBase {
            clique,
            n2,
            verify,
            attempts,
        } => {
            if *verify {
                let base = base_from_input(g)?;
                let verdict = verify_base(&base, *clique);
                let status = if verdict.ok { Status::Ok } else { Status::Failed };
                let json = json!({
                    "ok": verdict.ok,
                    "witness": verdict.witness,
                    "witness_color": verdict.witness_color,
                });
                let text = if verdict.ok {
                    "ok".to_string()
                } else {
                    format!("monochromatic clique {:?}", verdict.witness)
                };
                return Ok(Output::scalar(text, json).with_status(status));
            }
            let n2 = n2.unwrap_or_else(|| ramsey_core::stepup::suggested_base_size(*clique));
            let base = random_base_coloring(n2, *clique, g.seed, *attempts)?;
            let mut buf = Vec::new();
            write_base_coloring(&base, &mut buf)?;
            let text = String::from_utf8(buf)?.trim_end().to_string();
            let red: Vec<[usize; 2]> = (0..n2)
                .flat_map(|v| (0..v).map(move |u| [u, v]))
                .filter(|&[u, v]| base.color(u, v) == ramsey_core::Color::Red)
                .collect();
            Ok(Output::scalar(text, json!({ "n2": n2, "red": red })))
        }
        Command::Strongcolor { validate } => {
            let h = read_hypergraph(open(g.input.as_deref())?)?;
            if let Some(path) = validate {
                let p = read_partition(open(Some(path))?)?;
                let v = validate_strong_coloring(&h, p.classes())?;
                let status = if v.ok { Status::Ok } else { Status::Failed };
                return Ok(Output::json(json!({ "ok": v.ok, "violations": v.violations })).with_status(status));
            }
            let (sc, trace) = greedy_strong_coloring(&h)?;
            let check = BoundCheck::new(&sc, &trace);
            eprintln!(
                "t={} n0={} log2_product={:.3} t_limit={:.3} log2_product_limit={:.3}",
                check.t, check.n0, check.log2_product, check.t_limit, check.log2_product_limit
            );
            Ok(Output::json(to_value(&sc)))
        }
        Command::ExpanderGen { m, d } => {
            let graph = generate(&ExpanderParams::new(*m, *d, g.seed)?)?;
            Ok(Output::json(serde_json::from_str(&graph.as_hypergraph().to_json())?))
        }
        Command::ExpanderCheck { d, sampled } => {
            let graph = read_graph(open(g.input.as_deref())?)?;
            let mode = match sampled {
                Some(trials) => CheckMode::Sampled {
                    trials: *trials,
                    seed: g.seed,
                },
                None => CheckMode::Exhaustive,
            };
            let report = check_edge_distribution(&graph, *d, mode)?;
            let degree_ok = check_max_degree(&graph, *d);
            let json = json!({
                "max_degree": graph.max_degree(),
                "max_degree_ok": degree_ok,
                "report": to_value(&report),
            });
            let status = if degree_ok { Status::Ok } else { Status::Failed };
            Ok(Output::json(json).with_status(status))
        }
        Command::Pathhyper { k } => {
            let graph = read_graph(open(g.input.as_deref())?)?;
            let h = path_hypergraph(&graph, *k)?;
            Ok(Output::json(serde_json::from_str(&h.to_json())?))
        }
        Command::Search(SearchCommand::MonoCopy { k, pattern, window }) => {
            let c = stepped(g, *k)?;
            let h = read_hypergraph(open(Some(pattern))?)?;
            let labels = window.resolve(&c)?;
            let r = find_mono_copy(&c, &h, &labels, budget)?;
            let (outcome, witness, status) = match r.outcome {
                CopyOutcome::Found(e) => ("found", to_value(&e), Status::Ok),
                CopyOutcome::NotFound => ("not_found", Value::Null, Status::Ok),
                CopyOutcome::Budget => ("budget", Value::Null, Status::Budget),
            };
            let json = json!({
                "outcome": outcome,
                "witness": witness,
                "nodes_expanded": r.nodes_expanded,
                "elapsed_ms": ms(r.elapsed),
            });
            Ok(Output::json(json).with_status(status))
        }
        Command::Search(SearchCommand::MaxClique { k, window }) => {
            let c = stepped(g, *k)?;
            let labels = window.resolve(&c)?;
            let start = std::time::Instant::now();
            let r = max_mono_clique(&c, &labels, budget)?;
            let json = json!({
                "outcome": "found",
                "size": r.size,
                "witness": { "color": r.color, "map": r.witness },
                "nodes_expanded": r.nodes_expanded,
                "elapsed_ms": ms(start.elapsed()),
            });
            Ok(Output::json(json))
        }
        Command::Ramsey {
            clique,
            pattern,
            colors,
            k,
        } => {
            let p = match (clique, pattern) {
                (Some(n), _) => RamseyPattern::Clique(*n),
                (None, Some(path)) => RamseyPattern::Hypergraph(read_hypergraph(open(Some(path))?)?),
                (None, None) => bail!("pass --clique or --pattern"),
            };
            let start = std::time::Instant::now();
            let r = ramsey_number_small(&p, *colors, *k, budget)?;
            let certificate: Vec<Value> = r.lower_certificate.iter().map(|(e, c)| json!([e, c])).collect();
            let json = json!({
                "outcome": "found",
                "n": r.n,
                "witness": certificate,
                "refutation_nodes": r.refutation_nodes,
                "nodes_expanded": r.nodes_expanded,
                "elapsed_ms": ms(start.elapsed()),
            });
            Ok(Output::scalar(r.n.to_string(), json))
        }
        Command::Extremal { n, parts } => {
            let start = std::time::Instant::now();
            let r = extremal_number_small(*n, parts, budget)?;
            let json = json!({
                "outcome": "found",
                "value": r.value,
                "witness": serde_json::from_str::<Value>(&r.witness.to_json())?,
                "nodes_expanded": r.nodes_expanded,
                "elapsed_ms": ms(start.elapsed()),
            });
            Ok(Output::scalar(r.value.to_string(), json))
        }
        Command::VerifyPipeline { n, k, graph, window } => {
            let base = base_from_input(g)?;
            let graph = match graph {
                Some(path) => read_graph(open(Some(path))?)?,
                None => Graph::petersen(),
            };
            let labels = window.labels();
            let mut report = verify_lower_bound_instance(*n, *k, &base, &graph, labels.as_deref(), budget)?;
            if !g.timing {
                report.elapsed_ms = 0;
            }
            let status = match report.outcome.as_str() {
                "budget" => Status::Budget,
                _ if !report.base_verified || report.witness_valid == Some(false) => Status::Failed,
                _ => Status::Ok,
            };
            Ok(Output::json(to_value(&report)).with_status(status))
        }
    }
}
