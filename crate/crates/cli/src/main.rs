use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use superkappa::harness::{
    run_suite, tightness_search, verify, verify_decomposition, Instance, Manifest, Rule,
    TightnessConfig, TightnessReport, Verdict,
};
use superkappa::io::{read_graph_file, write_edgelist_json, write_graph6, RunReport};
use superkappa::{
    connectivity_report, is_super_kappa, CutMethod, CutOptions, ProductSpec, SuperStatus,
};

const EXIT_REFUTED: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_INPUT: u8 = 3;

/// Connectivity and super-connectedness of graph products with cycles.
#[derive(Parser)]
#[command(name = "superkappa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    G6,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exhaustive,
    Separators,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from an expression such as "cycle(3) x complete(2)".
    Gen {
        expr: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "g6")]
        format: Format,
    },
    /// Vertex and edge connectivity, minimum degree and super-kappa status.
    Kappa {
        file: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide super-kappa, printing a violating minimum cut if there is one.
    SuperKappa {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one rule on one instance.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        graph: Option<PathBuf>,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relabel G x C_n into layers and blocks and check the relabelling.
    Decompose {
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        graph: Option<PathBuf>,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a manifest of instances.
    Suite {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probe instances that fail one hypothesis of a super-kappa rule.
    SearchTightness {
        /// JSON list of search configurations; replaces the other flags.
        #[arg(long, conflicts_with_all = ["target", "max_part_size", "n_range"])]
        manifest: Option<PathBuf>,
        #[arg(long, required_unless_present = "manifest")]
        target: Option<String>,
        #[arg(long, required_unless_present = "manifest")]
        max_part_size: Option<usize>,
        /// Inclusive range such as 3..5.
        #[arg(long, required_unless_present = "manifest")]
        n_range: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Collects what goes into a run report.
struct Run {
    start: Instant,
    digests: BTreeMap<String, String>,
}

impl Run {
    fn new() -> Self {
        Run {
            start: Instant::now(),
            digests: BTreeMap::new(),
        }
    }

    fn digest(&mut self, name: &str, bytes: &[u8]) {
        self.digests
            .insert(name.to_owned(), hex(&Sha256::digest(bytes)));
    }

    fn read_graph(&mut self, path: &Path) -> Result<superkappa::Graph, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        self.digest(&path.display().to_string(), &bytes);
        Ok(read_graph_file(path)?)
    }

    fn finish<T: Serialize>(self, value: &T, out: Option<&Path>) -> Result<(), Failure> {
        let entry = serde_json::to_value(value)?;
        println!("{}", serde_json::to_string_pretty(&entry)?);
        if let Some(out) = out {
            let report = RunReport {
                tool: "superkappa".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command_line: std::env::args().collect(),
                input_digests: self.digests,
                entries: vec![entry],
                timings_ms: BTreeMap::from([(
                    "total".to_owned(),
                    self.start.elapsed().as_millis() as u64,
                )]),
            };
            std::fs::write(out, serde_json::to_string_pretty(&report)? + "\n")
                .map_err(|e| Failure(format!("{}: {e}", out.display())))?;
        }
        Ok(())
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn options(method: CutMethod, budget: Option<u64>) -> CutOptions {
    let mut opts = CutOptions::with_method(method);
    if let Some(b) = budget {
        opts.max_subsets = b;
        opts.max_cuts = b as usize;
    }
    opts
}

fn instance(
    run: &mut Run,
    graph: Option<PathBuf>,
    expr: Option<String>,
    n: Option<usize>,
) -> Result<Instance, Failure> {
    match (graph, expr) {
        (Some(path), _) => {
            let g = run.read_graph(&path)?;
            Ok(Instance::from_graph(g, n, path.display().to_string()))
        }
        (None, Some(expr)) => {
            run.digest("expr", expr.as_bytes());
            Ok(Instance::from_expr(&expr, n)?)
        }
        (None, None) => Err(Failure("one of --graph or --expr is required".into())),
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Confirmed | Verdict::HypothesesNotMet => 0,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}

fn tightness_code(reports: &[TightnessReport]) -> u8 {
    if reports.iter().any(|r| !r.witnesses.is_empty()) {
        EXIT_REFUTED
    } else if reports.iter().any(|r| !r.complete) {
        EXIT_INDETERMINATE
    } else {
        0
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure(format!("--n-range expects A..B, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut run = Run::new();
    match cli.command {
        Command::Gen { expr, out, format } => {
            let spec: ProductSpec = expr.parse()?;
            // Vertex labels are display-only; files carry plain indices.
            let g = spec.build()?.without_labels();
            let text = match format {
                Format::G6 => write_graph6(&g),
                Format::Json => write_edgelist_json(&g) + "\n",
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Kappa { file, budget, out } => {
            let g = run.read_graph(&file)?;
            let report = connectivity_report(&g, &options(CutMethod::Auto, budget))?;
            run.finish(&report, out.as_deref())?;
            Ok(0)
        }
        Command::SuperKappa {
            file,
            method,
            budget,
            out,
        } => {
            let g = run.read_graph(&file)?;
            let method = match method {
                MethodArg::Auto => CutMethod::Auto,
                MethodArg::Exhaustive => CutMethod::Exhaustive,
                MethodArg::Separators => CutMethod::Separators,
            };
            let sk = is_super_kappa(&g, &options(method, budget))?;
            run.finish(&sk, out.as_deref())?;
            Ok(match sk.status {
                SuperStatus::True => 0,
                SuperStatus::False => EXIT_REFUTED,
                SuperStatus::Indeterminate => EXIT_INDETERMINATE,
            })
        }
        Command::Verify {
            theorem,
            graph,
            expr,
            n,
            budget,
            out,
        } => {
            let rule: Rule = theorem.parse()?;
            let inst = instance(&mut run, graph, expr, n)?;
            let verdict = verify(rule, &inst, &options(CutMethod::Auto, budget))?;
            run.finish(&verdict, out.as_deref())?;
            Ok(verdict_code(verdict.verdict))
        }
        Command::Decompose {
            graph,
            expr,
            n,
            out,
        } => {
            let inst = instance(&mut run, graph, expr, Some(n))?;
            let report = verify_decomposition(&inst)?;
            run.finish(&report, out.as_deref())?;
            Ok(verdict_code(report.verdict))
        }
        Command::Suite {
            manifest,
            jobs,
            out,
        } => {
            let text = std::fs::read_to_string(&manifest)
                .map_err(|e| Failure(format!("{}: {e}", manifest.display())))?;
            run.digest(&manifest.display().to_string(), text.as_bytes());
            let m = Manifest::from_json(&text)?;
            let report = run_suite(&m, jobs);
            let s = report.summary;
            run.finish(&report, out.as_deref())?;
            Ok(if s.errors > 0 {
                EXIT_INPUT
            } else if s.refuted > 0 {
                EXIT_REFUTED
            } else if s.indeterminate > 0 {
                EXIT_INDETERMINATE
            } else {
                0
            })
        }
        Command::SearchTightness {
            manifest,
            target,
            max_part_size,
            n_range,
            seed,
            samples,
            budget,
            out,
        } => {
            let configs: Vec<TightnessConfig> = match manifest {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    run.digest(&path.display().to_string(), text.as_bytes());
                    serde_json::from_str(&text)?
                }
                None => {
                    let (n_min, n_max) = parse_range(n_range.as_deref().unwrap_or_default())?;
                    vec![TightnessConfig {
                        target: target.unwrap_or_default().parse()?,
                        max_part_size: max_part_size.unwrap_or_default(),
                        n_min,
                        n_max,
                        seed,
                        samples,
                        cut_options: options(CutMethod::Auto, budget),
                    }]
                }
            };
            let reports = configs
                .iter()
                .map(tightness_search)
                .collect::<Result<Vec<_>, _>>()?;
            let code = tightness_code(&reports);
            run.finish(&reports, out.as_deref())?;
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
