use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lplab_cli::{parse_range, read_graph, run_sweep, Corpus, EdgeSpec, ReportFormat, SweepConfig};
use lplab_core::bounds::{evaluate_with, BoundReport, EvaluateOptions, CSV_HEADER};
use lplab_core::connectivity::{disjoint_paths, fan, local_connectivity, vertex_connectivity};
use lplab_core::families::{complete_bipartite, random_k_connected, tight_family};
use lplab_core::longest::Engine;
use lplab_core::path::posa_rotate;
use lplab_core::{Graph, Path};

#[derive(Parser, Debug)]
#[command(name = "lplab", version, about = "Longest-path intersection laboratory")]
struct Cli {
    /// Machine-readable output instead of the human table.
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,

    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "LPLAB_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Dfs,
    Dp,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Dfs => Engine::Dfs,
            EngineArg::Dp => Engine::Dp,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a graph file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file (stdout when omitted).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Measure one graph and check every bound.
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        eval: EvalArgs,
        /// Also write the report row to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a whole corpus.
    Sweep {
        #[command(subcommand)]
        corpus: SweepCorpus,
        #[arg(long, global = true, default_value = "sweep-out")]
        out_dir: PathBuf,
        /// Skip graphs whose GraphId already has a row.
        #[arg(long, global = true)]
        resume: bool,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// One Pósa rotation at the first vertex of a path.
    Rotate {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<usize>,
        #[arg(long)]
        r: usize,
    },
    /// A fan of k paths from a vertex to a target set.
    Fan {
        input: PathBuf,
        #[arg(long)]
        v: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Vertex connectivity, or disjoint paths between two vertices.
    Connectivity {
        input: PathBuf,
        #[arg(long, requires = "v")]
        u: Option<usize>,
        #[arg(long, requires = "u")]
        v: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    Tight {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
    },
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_tries: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SweepCorpus {
    Random {
        /// Vertex counts, e.g. `5..9`.
        #[arg(long, value_parser = parse_range)]
        n: std::ops::RangeInclusive<usize>,
        /// Edge counts, e.g. `10..20`.
        #[arg(long, value_parser = parse_range, conflicts_with = "density")]
        m: Option<std::ops::RangeInclusive<usize>>,
        #[arg(long)]
        density: Option<f64>,
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        per_cell: usize,
        #[arg(long, default_value_t = 100_000)]
        max_tries: usize,
    },
    Tight {
        #[arg(long, value_parser = parse_range)]
        k: std::ops::RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        ell: std::ops::RangeInclusive<usize>,
    },
    Bipartite {
        #[arg(long, value_parser = parse_range)]
        a: std::ops::RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        b: std::ops::RangeInclusive<usize>,
    },
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum, default_value = "dfs", global = true)]
    engine: EngineArg,
    /// Maximum number of longest paths listed per graph.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Per-graph time limit in seconds.
    #[arg(long, global = true)]
    time_budget: Option<f64>,
    /// Accept an upper bound from a truncated listing.
    #[arg(long, global = true)]
    allow_truncated: bool,
    /// Take the minimum from the path listing only.
    #[arg(long, global = true)]
    no_streaming: bool,
    /// Run the proof-claim checks when at most this many paths are listed.
    #[arg(long, global = true)]
    claims: Option<usize>,
}

impl EvalArgs {
    fn options(&self) -> Result<EvaluateOptions, String> {
        let time_budget = match self.time_budget {
            Some(s) if !(s > 0.0 && s.is_finite()) => {
                return Err(format!("--time-budget must be positive, got {s}"))
            }
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        Ok(EvaluateOptions {
            engine: self.engine.into(),
            cap: self.cap,
            streaming: !self.no_streaming,
            allow_truncated: self.allow_truncated,
            time_budget,
            claims_max_paths: self.claims,
        })
    }
}

type CmdResult = Result<i32, Box<dyn std::error::Error>>;

fn emit(out: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn gen(kind: &GenKind, out: Option<&PathBuf>) -> CmdResult {
    let (graph, text) = match *kind {
        GenKind::Tight { k, ell } => {
            let f = tight_family(k, ell)?;
            let text = f.to_json();
            (f.graph, text)
        }
        GenKind::Bipartite { a, b } => {
            let g = complete_bipartite(a, b)?;
            let text = g.to_json();
            (g, text)
        }
        GenKind::Random {
            n,
            m,
            k_min,
            seed,
            max_tries,
        } => {
            let s = random_k_connected(n, m, k_min, seed, max_tries)?;
            eprintln!("accepted after {} tries, connectivity {}", s.tries, s.connectivity);
            let text = s.graph.to_json();
            (s.graph, text)
        }
    };
    emit(out, &format!("{text}\n"))?;
    if out.is_some() {
        println!("{}", graph.id());
    } else {
        eprintln!("{}", graph.id());
    }
    Ok(0)
}

fn csv_text(report: &BoundReport) -> Result<String, Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    w.write_record(report.csv_record())?;
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn table(r: &BoundReport) -> String {
    let mut s = String::new();
    let mut line = |k: &str, v: String| s.push_str(&format!("{k:<20} {v}\n"));
    line("graph", r.graph_id.to_string());
    line("n, m", format!("{}, {}", r.n, r.m));
    line("connectivity k", r.k.to_string());
    line("longest path L", format!("{} edges", r.length));
    line(
        "longest paths",
        format!("{}{}", r.census_count, if r.census_truncated { " (listing truncated)" } else { "" }),
    );
    line(
        "min intersection",
        format!("{}{}", r.min_intersection, if r.min_intersection_upper_bound { " (upper bound)" } else { "" }),
    );
    line("hamiltonian", format!("cycle={} path={}", r.ham_cycle, r.ham_path));
    let b = &r.bounds;
    for (name, v) in [("prop3", b.prop3), ("lemma4", b.lemma4), ("main", b.main), ("hippchen", b.hippchen)] {
        line(&format!("bound {name}"), format!("{} -> {}", v.exact, v.effective));
    }
    line(
        "threshold",
        format!("(n-2)/3 = {}, n/3 = {}", b.corollary_threshold, b.corollary_threshold_weak),
    );
    for (name, v) in r.verdicts.entries() {
        line(&format!("verdict {name}"), v.to_string());
    }
    let eq = r.verdicts.equalities();
    if !eq.is_empty() {
        line("equality", eq.join(", "));
    }
    if let Some(c) = &r.proof_claims {
        line("proof claims", format!("{} checks failed over {} path pairs", c.failures(), c.path_pairs));
    }
    line("classification", format!("{:?}", r.classification));
    if let Some(d) = &r.diagnosis {
        line("diagnosis", d.clone());
    }
    line("elapsed", format!("{} ms", r.elapsed.total_ms));
    s
}

fn analyze(input: &PathBuf, eval: &EvalArgs, out: Option<&PathBuf>, format: Option<OutFormat>) -> CmdResult {
    let g = read_graph(input)?;
    let report = evaluate_with(&g, &eval.options()?)?;
    let record = |f: OutFormat| -> Result<String, Box<dyn std::error::Error>> {
        Ok(match f {
            OutFormat::Json => format!("{}\n", report.to_json()),
            OutFormat::Csv => csv_text(&report)?,
        })
    };
    match format {
        None => print!("{}", table(&report)),
        Some(f) => print!("{}", record(f)?),
    }
    if let Some(path) = out {
        fs::write(path, record(format.unwrap_or(OutFormat::Csv))?)?;
    }
    Ok(report.exit_code())
}

fn sweep(
    corpus: &SweepCorpus,
    out_dir: &PathBuf,
    resume: bool,
    eval: &EvalArgs,
    jobs: usize,
    format: Option<OutFormat>,
) -> CmdResult {
    let corpus = match corpus {
        SweepCorpus::Random {
            n,
            m,
            density,
            k_min,
            seed,
            per_cell,
            max_tries,
        } => Corpus::Random {
            n: n.clone(),
            edges: match (m, density) {
                (Some(m), _) => EdgeSpec::Count(m.clone()),
                (None, Some(d)) => EdgeSpec::Density(*d),
                (None, None) => return Err("sweep random needs --m or --density".into()),
            },
            k_min: *k_min,
            seed: *seed,
            per_cell: *per_cell,
            max_tries: *max_tries,
        },
        SweepCorpus::Tight { k, ell } => Corpus::Tight {
            k: k.clone(),
            ell: ell.clone(),
        },
        SweepCorpus::Bipartite { a, b } => Corpus::Bipartite {
            a: a.clone(),
            b: b.clone(),
        },
    };
    let opts = eval.options()?;
    let mut cfg = SweepConfig::new(corpus, out_dir.clone());
    cfg.engine = opts.engine;
    cfg.cap = opts.cap;
    cfg.jobs = jobs;
    cfg.time_budget = opts.time_budget;
    cfg.resume = resume;
    cfg.claims_max_paths = opts.claims_max_paths;
    cfg.format = format.map(|f| match f {
        OutFormat::Json => ReportFormat::Json,
        OutFormat::Csv => ReportFormat::Csv,
    });
    let summary = run_sweep(&cfg)?;
    match format {
        Some(OutFormat::Json) => println!("{}", serde_json::to_string(&summary)?),
        _ => {
            println!(
                "attempted {} completed {} resumed {} timed out {} failed {}",
                summary.attempted, summary.completed, summary.resumed, summary.timed_out, summary.failed
            );
            println!(
                "theorem failures {} conjecture candidates {} equality witnesses {}",
                summary.theorem_failures.len(),
                summary.conjecture_candidates.len(),
                summary.equality_witnesses.len()
            );
            for e in &summary.errors {
                eprintln!("error: {e}");
            }
            println!("rows in {}", cfg.csv_path().display());
        }
    }
    Ok(summary.exit_code())
}

fn print_json<T: serde::Serialize>(value: &T) -> CmdResult {
    println!("{}", serde_json::to_string(value)?);
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    match &cli.cmd {
        Cmd::Gen { kind, out } => gen(kind, out.as_ref()),
        Cmd::Analyze { input, eval, out } => analyze(input, eval, out.as_ref(), cli.format),
        Cmd::Sweep {
            corpus,
            out_dir,
            resume,
            eval,
        } => sweep(corpus, out_dir, *resume, eval, jobs, cli.format),
        Cmd::Rotate { input, path, r } => {
            let g = read_graph(input)?;
            let q = Path::new(&g, path.clone())?;
            print_json(&posa_rotate(&g, &q, *r)?.vertices())
        }
        Cmd::Fan { input, v, s, k } => {
            let g = read_graph(input)?;
            let targets: BTreeSet<usize> = s.iter().copied().collect();
            print_json(&fan(&g, *v, &targets, *k)?)
        }
        Cmd::Connectivity { input, u, v } => {
            let g: Graph = read_graph(input)?;
            match (u, v) {
                (Some(u), Some(v)) => {
                    let k = local_connectivity(&g, *u, *v, usize::MAX);
                    let paths = disjoint_paths(&g, *u, *v, k)?;
                    print_json(&serde_json::json!({ "u": u, "v": v, "k": k, "paths": paths }))
                }
                _ => {
                    let k = vertex_connectivity(&g)?;
                    match cli.format {
                        Some(OutFormat::Json) => {
                            print_json(&serde_json::json!({ "graph_id": g.id(), "k": k }))
                        }
                        _ => {
                            println!("{k}");
                            Ok(0)
                        }
                    }
                }
            }
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1: codes 2 and 3 are reserved for verdicts.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
