//! Corpus orchestration for `lplab`: sweep configuration, the worker pool,
//! the ordered CSV sink, resume bookkeeping and summaries.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufReader, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use lplab_core::bounds::{evaluate_with, BoundReport, Classification, EvaluateOptions, Verdict, CSV_HEADER};
use lplab_core::families::{complete_bipartite, random_k_connected, tight_family};
use lplab_core::graph::{load_graph, Format};
use lplab_core::longest::{census, Engine};
use lplab_core::{Budget, Graph, GraphId};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] lplab_core::Error),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Parses `"5"`, `"5..9"` or `"5..=9"` as an inclusive range.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad bound {t:?} in {s:?}: {e}"))
    };
    let (lo, hi) = match s.split_once("..") {
        None => {
            let v = num(s)?;
            (v, v)
        }
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
    };
    Ok(lo..=hi)
}

/// Reads a graph file, accepting both the JSON and edge-list formats.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let format = if text.trim_start().starts_with('{') {
        Format::Json
    } else {
        Format::Edgelist
    };
    Ok(load_graph(BufReader::new(text.as_bytes()), format)?)
}

#[derive(Clone, Debug, PartialEq)]
pub enum EdgeSpec {
    /// Inclusive edge-count range per `n`.
    Count(RangeInclusive<usize>),
    /// Fraction of all pairs, rounded.
    Density(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Corpus {
    Random {
        n: RangeInclusive<usize>,
        edges: EdgeSpec,
        k_min: usize,
        seed: u64,
        per_cell: usize,
        max_tries: usize,
    },
    Tight {
        k: RangeInclusive<usize>,
        ell: RangeInclusive<usize>,
    },
    Bipartite {
        a: RangeInclusive<usize>,
        b: RangeInclusive<usize>,
    },
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub corpus: Corpus,
    pub engine: Engine,
    pub cap: Option<usize>,
    pub out_dir: PathBuf,
    pub jobs: usize,
    pub time_budget: Option<Duration>,
    pub resume: bool,
    pub claims_max_paths: Option<usize>,
    pub format: Option<ReportFormat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl SweepConfig {
    pub fn new(corpus: Corpus, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            corpus,
            engine: Engine::Dfs,
            cap: None,
            out_dir: out_dir.into(),
            jobs: 1,
            time_budget: None,
            resume: false,
            claims_max_paths: None,
            format: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let empty = |name: &str, r: &RangeInclusive<usize>| {
            if r.is_empty() {
                Err(HarnessError::Config(format!("empty {name} range {r:?}")))
            } else {
                Ok(())
            }
        };
        match &self.corpus {
            Corpus::Random {
                n,
                edges,
                k_min,
                per_cell,
                ..
            } => {
                empty("n", n)?;
                if *n.start() < 2 {
                    return Err(HarnessError::Config("random graphs need n >= 2".into()));
                }
                match edges {
                    EdgeSpec::Count(m) => empty("m", m)?,
                    EdgeSpec::Density(d) if !(0.0..=1.0).contains(d) => {
                        return Err(HarnessError::Config(format!("density {d} outside [0, 1]")))
                    }
                    EdgeSpec::Density(_) => {}
                }
                if *k_min == 0 || *per_cell == 0 {
                    return Err(HarnessError::Config("k_min and per_cell must be positive".into()));
                }
            }
            Corpus::Tight { k, ell } => {
                empty("k", k)?;
                empty("ell", ell)?;
            }
            Corpus::Bipartite { a, b } => {
                empty("a", a)?;
                empty("b", b)?;
            }
        }
        if self.jobs == 0 {
            return Err(HarnessError::Config("jobs must be positive".into()));
        }
        if self.time_budget.is_some_and(|d| d.is_zero()) {
            return Err(HarnessError::Config("time budget must be positive".into()));
        }
        Ok(())
    }

    pub fn csv_path(&self) -> PathBuf {
        self.out_dir.join("reports.csv")
    }

    pub fn json_path(&self) -> PathBuf {
        self.out_dir.join("reports.jsonl")
    }

    pub fn summary_path(&self) -> PathBuf {
        self.out_dir.join("summary.json")
    }

    pub fn candidates_dir(&self) -> PathBuf {
        self.out_dir.join("candidates")
    }
}

#[derive(Clone, Debug)]
enum Job {
    Random {
        n: usize,
        m: usize,
        k_min: usize,
        seed: u64,
        max_tries: usize,
    },
    Tight(usize, usize),
    Bipartite(usize, usize),
}

impl Job {
    fn label(&self) -> String {
        match self {
            Job::Random { n, m, k_min, seed, .. } => format!("random n={n} m={m} k_min={k_min} seed={seed}"),
            Job::Tight(k, ell) => format!("tight k={k} ell={ell}"),
            Job::Bipartite(a, b) => format!("bipartite a={a} b={b}"),
        }
    }

    fn build(&self) -> lplab_core::Result<Graph> {
        match *self {
            Job::Random {
                n,
                m,
                k_min,
                seed,
                max_tries,
            } => random_k_connected(n, m, k_min, seed, max_tries).map(|s| s.graph),
            Job::Tight(k, ell) => tight_family(k, ell).map(|f| f.graph),
            Job::Bipartite(a, b) => complete_bipartite(a, b),
        }
    }
}

fn jobs_for(corpus: &Corpus) -> Vec<Job> {
    match corpus {
        Corpus::Random {
            n,
            edges,
            k_min,
            seed,
            per_cell,
            max_tries,
        } => {
            let mut jobs = Vec::new();
            for n in n.clone() {
                let pairs = n * (n - 1) / 2;
                let floor = (k_min * n).div_ceil(2);
                let ms: Vec<usize> = match edges {
                    EdgeSpec::Count(r) => r.clone().collect(),
                    EdgeSpec::Density(d) => vec![(d * pairs as f64).round() as usize],
                };
                for m in ms.into_iter().filter(|&m| m >= floor && m <= pairs) {
                    for j in 0..*per_cell as u64 {
                        jobs.push(Job::Random {
                            n,
                            m,
                            k_min: *k_min,
                            seed: seed.wrapping_add(j),
                            max_tries: *max_tries,
                        });
                    }
                }
            }
            jobs
        }
        Corpus::Tight { k, ell } => k
            .clone()
            .flat_map(|k| ell.clone().map(move |l| Job::Tight(k, l)))
            .collect(),
        Corpus::Bipartite { a, b } => a
            .clone()
            .flat_map(|a| b.clone().map(move |b| Job::Bipartite(a, b)))
            .collect(),
    }
}

#[derive(Debug)]
enum Outcome {
    Report(Box<BoundReport>),
    Resumed,
    Timeout(GraphId),
    Failed { label: String, error: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub equality: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

impl Tally {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Equality => self.equality += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.equality + self.fail + self.not_applicable
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EqualityWitness {
    pub graph_id: GraphId,
    pub verdicts: Vec<&'static str>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepSummary {
    pub attempted: usize,
    pub completed: usize,
    pub resumed: usize,
    pub timed_out: usize,
    pub failed: usize,
    pub tallies: BTreeMap<&'static str, Tally>,
    pub passes: usize,
    pub theorem_failures: Vec<GraphId>,
    pub conjecture_candidates: Vec<GraphId>,
    pub equality_witnesses: Vec<EqualityWitness>,
    pub timeouts: Vec<GraphId>,
    pub errors: Vec<String>,
    pub total_elapsed_ms: u64,
}

impl SweepSummary {
    pub fn exit_code(&self) -> i32 {
        if !self.theorem_failures.is_empty() {
            2
        } else if !self.conjecture_candidates.is_empty() {
            3
        } else {
            0
        }
    }

    fn absorb(&mut self, report: &BoundReport) {
        self.completed += 1;
        for (name, v) in report.verdicts.entries() {
            self.tallies.entry(name).or_default().add(v);
        }
        match report.classification {
            Classification::Pass => self.passes += 1,
            Classification::TheoremFailure => self.theorem_failures.push(report.graph_id.clone()),
            Classification::ConjectureCandidate => {
                self.conjecture_candidates.push(report.graph_id.clone())
            }
        }
        let eq = report.verdicts.equalities();
        if !eq.is_empty() {
            self.equality_witnesses.push(EqualityWitness {
                graph_id: report.graph_id.clone(),
                verdicts: eq,
            });
        }
    }
}

fn completed_ids(path: &Path) -> Result<HashSet<String>> {
    if !path.exists() {
        return Ok(HashSet::new());
    }
    let mut rdr = csv::Reader::from_path(path)?;
    let mut ids = HashSet::new();
    for rec in rdr.records() {
        // A torn final row from a crash is skipped and recomputed.
        match rec {
            Ok(r) if r.len() == CSV_HEADER.len() => {
                ids.insert(r[0].to_string());
            }
            _ => continue,
        }
    }
    Ok(ids)
}

/// Saves a candidate graph with its report and census for re-verification.
fn quarantine(cfg: &SweepConfig, g: &Graph, report: &BoundReport) -> Result<()> {
    let dir = cfg.candidates_dir();
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    let census = census(g, cfg.engine, cfg.cap, &Budget::unlimited())?;
    let dump = serde_json::json!({
        "graph": g,
        "report": report,
        "census": census,
    });
    let path = dir.join(format!("{}.json", report.graph_id));
    fs::write(&path, serde_json::to_string_pretty(&dump).expect("json")).map_err(io_err(&path))
}

fn run_job(cfg: &SweepConfig, job: &Job, done: &HashSet<String>) -> Outcome {
    let g = match job.build() {
        Ok(g) => g,
        Err(e) => {
            return Outcome::Failed {
                label: job.label(),
                error: e.to_string(),
            }
        }
    };
    let id = g.id();
    if done.contains(id.as_str()) {
        return Outcome::Resumed;
    }
    let opts = EvaluateOptions {
        engine: cfg.engine,
        cap: cfg.cap,
        time_budget: cfg.time_budget,
        claims_max_paths: cfg.claims_max_paths,
        ..EvaluateOptions::default()
    };
    match evaluate_with(&g, &opts) {
        Ok(report) => {
            if report.classification != Classification::Pass {
                if let Err(e) = quarantine(cfg, &g, &report) {
                    return Outcome::Failed {
                        label: job.label(),
                        error: format!("could not save candidate: {e}"),
                    };
                }
            }
            Outcome::Report(Box::new(report))
        }
        Err(lplab_core::Error::Timeout) => Outcome::Timeout(id),
        Err(e) => Outcome::Failed {
            label: job.label(),
            error: e.to_string(),
        },
    }
}

struct Sink {
    csv: csv::Writer<File>,
    json: Option<File>,
}

impl Sink {
    fn open(cfg: &SweepConfig) -> Result<Self> {
        let path = cfg.csv_path();
        let fresh = !cfg.resume || !path.exists();
        let file = OpenOptions::new()
            .create(true)
            .write(true)
            .append(!fresh)
            .truncate(fresh)
            .open(&path)
            .map_err(io_err(&path))?;
        let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        if fresh {
            csv.write_record(CSV_HEADER)?;
            csv.flush().map_err(io_err(&path))?;
        }
        let json = match cfg.format {
            Some(ReportFormat::Json) => {
                let path = cfg.json_path();
                Some(
                    OpenOptions::new()
                        .create(true)
                        .write(true)
                        .append(!fresh)
                        .truncate(fresh)
                        .open(&path)
                        .map_err(io_err(&path))?,
                )
            }
            _ => None,
        };
        Ok(Self { csv, json })
    }

    fn write(&mut self, cfg: &SweepConfig, report: &BoundReport) -> Result<()> {
        self.csv.write_record(report.csv_record())?;
        self.csv.flush().map_err(io_err(&cfg.csv_path()))?;
        if let Some(f) = &mut self.json {
            writeln!(f, "{}", report.to_json())
                .and_then(|_| f.flush())
                .map_err(io_err(&cfg.json_path()))?;
        }
        Ok(())
    }
}

/// Runs a sweep. Rows are written in job order whatever the worker
/// interleaving, each flushed as soon as it is next in line.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    cfg.validate()?;
    let start = Instant::now();
    fs::create_dir_all(&cfg.out_dir).map_err(io_err(&cfg.out_dir))?;
    let done = if cfg.resume {
        completed_ids(&cfg.csv_path())?
    } else {
        HashSet::new()
    };
    let jobs = jobs_for(&cfg.corpus);
    if jobs.is_empty() {
        return Err(HarnessError::Config("the corpus is empty".into()));
    }
    let mut sink = Sink::open(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| HarnessError::Config(e.to_string()))?;

    let mut summary = SweepSummary {
        attempted: jobs.len(),
        ..SweepSummary::default()
    };
    let (tx, rx) = mpsc::channel::<(usize, Outcome)>();
    let mut write_result = Ok(());
    std::thread::scope(|scope| {
        scope.spawn(|| {
            pool.install(|| {
                jobs.par_iter()
                    .enumerate()
                    .for_each_with(tx, |tx, (i, job)| {
                        let _ = tx.send((i, run_job(cfg, job, &done)));
                    })
            })
        });
        let mut pending: BTreeMap<usize, Outcome> = BTreeMap::new();
        let mut next = 0;
        for (i, outcome) in rx {
            pending.insert(i, outcome);
            while let Some(outcome) = pending.remove(&next) {
                next += 1;
                match outcome {
                    Outcome::Report(report) => {
                        summary.absorb(&report);
                        if write_result.is_ok() {
                            write_result = sink.write(cfg, &report);
                        }
                    }
                    Outcome::Resumed => summary.resumed += 1,
                    Outcome::Timeout(id) => {
                        summary.timed_out += 1;
                        summary.timeouts.push(id);
                    }
                    Outcome::Failed { label, error } => {
                        summary.failed += 1;
                        summary.errors.push(format!("{label}: {error}"));
                    }
                }
            }
        }
    });
    write_result?;
    summary.total_elapsed_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    let path = cfg.summary_path();
    fs::write(&path, serde_json::to_string_pretty(&summary).expect("json")).map_err(io_err(&path))?;
    Ok(summary)
}
