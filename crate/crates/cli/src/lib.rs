//! Command-line front end for `rigidity-core`.
//!
//! Every subcommand reads one graph (or a corpus) from a file or stdin,
//! prints a report as JSON or a short text summary, and maps the report to
//! an exit status.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rigidity_core::pinning::{
    build_pinned_system, extract_tree_partition, pinned_invertible, EliminationPartition, PivotRule,
    TreeExtraction,
};
use rigidity_core::search::{rigidity_corpus, HarnessError};
use rigidity_core::theorem::TheoremError;
use rigidity_core::treedecomp::DecompError;
use rigidity_core::*;
use serde::Serialize;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("line {line}: {source}")]
    CorpusLine { line: usize, source: GraphError },
    #[error("{0}")]
    Theorem(#[from] TheoremError),
    #[error("{0}")]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Decomp(#[from] DecompError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Graph6,
    EdgeList,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum PivotRuleArg {
    #[default]
    AxisMajor,
    VertexMajor,
}

impl From<PivotRuleArg> for PivotRule {
    fn from(r: PivotRuleArg) -> Self {
        match r {
            PivotRuleArg::AxisMajor => PivotRule::AxisMajor,
            PivotRuleArg::VertexMajor => PivotRule::VertexMajor,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct CliConfig {
    /// Ambient dimension d.
    #[arg(long = "dim", short = 'd', global = true, default_value_t = 2,
          value_parser = clap::value_parser!(u32).range(2..))]
    pub dim: u32,
    /// Seed for random placements.
    #[arg(long, global = true, env = "RIGIDITY_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Independent placements per rank computation; the maximum rank wins.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS as u32,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    /// Input encoding; guessed from the first character when omitted.
    #[arg(long, global = true, value_enum)]
    pub input_format: Option<InputFormat>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Stop the path loop at the first failing augmentation.
    #[arg(long, global = true)]
    pub fast: bool,
    #[arg(long, global = true, value_enum, default_value_t = PivotRuleArg::AxisMajor)]
    pub pivot_rule: PivotRuleArg,
    /// Worker threads for scans.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

impl CliConfig {
    pub fn d(&self) -> usize {
        self.dim as usize
    }

    fn trials(&self) -> usize {
        self.trials as usize
    }

    fn theorem_options(&self) -> TheoremOptions {
        TheoremOptions {
            fast: self.fast,
            ..TheoremOptions::default()
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rigidity", version, about = "Generic rigidity by rank and by spanning-tree decomposition")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: CliConfig,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of the rigidity matrix at random placements.
    Rank { input: Option<PathBuf> },
    /// Path-augmentation test over every ordered path.
    Theorem { input: Option<PathBuf> },
    /// Run both methods; exits 3 when they disagree.
    Compare { input: Option<PathBuf> },
    /// Split the graph into k edge-disjoint spanning trees.
    Decompose {
        input: Option<PathBuf>,
        /// Number of trees; defaults to --dim.
        #[arg(short, long)]
        k: Option<usize>,
    },
    /// Build the pinned system for one path and extract trees from it.
    Pin {
        input: Option<PathBuf>,
        /// Comma-separated path vertices; defaults to the first path found.
        #[arg(long, value_delimiter = ',')]
        path: Option<Vec<usize>>,
    },
    /// Compare both methods over a corpus.
    Scan {
        /// graph6 lines, a JSON array of edge lists, or one edge list per line.
        corpus: Option<PathBuf>,
        /// Enumerate all graphs with d·n − C(d+1, 2) edges for n in LO-HI
        /// instead of reading a corpus.
        #[arg(long, value_name = "LO-HI", value_parser = parse_range, conflicts_with = "corpus")]
        enumerate: Option<RangeInclusive<usize>>,
    },
    /// Print the double banana as an edge-list JSON document.
    Banana,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = s.split_once('-').unwrap_or((s, s));
    let lo: usize = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}-{hi}"));
    }
    Ok(lo..=hi)
}

/// Where a subcommand reads from and writes to.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Run a parsed command line and return its exit status.
pub fn run(cli: &Cli, io: Io<'_>) -> i32 {
    match dispatch(cli, io.stdin, io.stdout, io.stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Rank { input } => {
            let g = read_graph(input.as_deref(), stdin, cfg.input_format)?;
            cmd_rank(&g, cfg, out)
        }
        Command::Theorem { input } => {
            let g = read_graph(input.as_deref(), stdin, cfg.input_format)?;
            cmd_theorem(&g, cfg, out)
        }
        Command::Compare { input } => {
            let g = read_graph(input.as_deref(), stdin, cfg.input_format)?;
            cmd_compare(&g, cfg, out)
        }
        Command::Decompose { input, k } => {
            let g = read_graph(input.as_deref(), stdin, cfg.input_format)?;
            cmd_decompose(&g, k.unwrap_or(cfg.d()), cfg, out)
        }
        Command::Pin { input, path } => {
            let g = read_graph(input.as_deref(), stdin, cfg.input_format)?;
            cmd_pin(&g, path.as_deref(), cfg, out)
        }
        Command::Scan { corpus, enumerate } => {
            let (name, graphs) = match enumerate {
                Some(range) => (
                    format!("enumerated n={}..={}", range.start(), range.end()),
                    rigidity_corpus(cfg.d(), range.clone())?,
                ),
                None => {
                    let text = read_text(corpus.as_deref(), stdin)?;
                    let name = corpus
                        .as_ref()
                        .map_or_else(|| "stdin".to_string(), |p| p.display().to_string());
                    (name, parse_corpus(&text, cfg.input_format)?)
                }
            };
            cmd_scan(&graphs, &name, cfg, out, err)
        }
        Command::Banana => cmd_banana(out),
    }
}

fn read_text(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
        }
        _ => {
            stdin.read_to_string(&mut text).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
        }
    }
    Ok(text)
}

fn detect(text: &str, format: Option<InputFormat>) -> InputFormat {
    format.unwrap_or_else(|| {
        if text.trim_start().starts_with(['{', '[']) {
            InputFormat::EdgeList
        } else {
            InputFormat::Graph6
        }
    })
}

/// Parse one graph in the given (or detected) encoding.
pub fn parse_graph(text: &str, format: Option<InputFormat>) -> Result<Multigraph, GraphError> {
    match detect(text, format) {
        InputFormat::EdgeList => parse_edge_list(text),
        InputFormat::Graph6 => parse_graph6(strip_graph6_header(text.trim())),
    }
}

fn strip_graph6_header(line: &str) -> &str {
    line.strip_prefix(">>graph6<<").unwrap_or(line)
}

fn read_graph(path: Option<&Path>, stdin: &mut dyn Read, format: Option<InputFormat>) -> Result<Multigraph, CliError> {
    Ok(parse_graph(&read_text(path, stdin)?, format)?)
}

/// Parse a corpus: graph6 lines, a JSON array of edge lists, or JSON lines.
/// Blank lines are skipped.
pub fn parse_corpus(text: &str, format: Option<InputFormat>) -> Result<Vec<Multigraph>, CliError> {
    let trimmed = text.trim_start();
    if format != Some(InputFormat::Graph6) && trimmed.starts_with('[') {
        return serde_json::from_str::<Vec<Multigraph>>(trimmed)
            .map_err(|e| CliError::CorpusLine { line: 1, source: e.into() });
    }
    let format = detect(text, format);
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph(l, Some(format)).map_err(|source| CliError::CorpusLine { line: i + 1, source })
        })
        .collect()
}

fn emit<T: Serialize>(out: &mut dyn Write, cfg: &CliConfig, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
    let rendered = match cfg.format {
        OutputFormat::Json => serde_json::to_string_pretty(value).expect("reports serialize"),
        OutputFormat::Text => text(),
    };
    writeln!(out, "{}", rendered.trim_end()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn verdict_text(v: &RigidityVerdict) -> String {
    format!(
        "verdict: {}\nrank: {} (target {})\nedges: {} (count {})\nflex-dim: {}\n",
        v.verdict.as_str(),
        v.rank,
        v.target,
        v.m,
        if v.edge_count_ok { "ok" } else { "off" },
        v.flex_dim
    )
}

fn theorem_text(r: &TheoremReport) -> String {
    let s = r.summary();
    let mut t = format!(
        "claim: {}\npaths checked: {}\npaths decomposable: {}\n",
        s.claim.as_str(),
        s.paths_checked,
        s.paths_decomposable
    );
    if !r.edge_count_ok {
        let _ = writeln!(t, "edge count: off");
    }
    for p in s.failing_paths.iter().take(10) {
        let _ = writeln!(t, "failing path: {p:?}");
    }
    t
}

pub fn cmd_rank(g: &Multigraph, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let v = rigidity_verdict(g, cfg.d(), cfg.trials(), cfg.seed);
    emit(out, cfg, &v, || verdict_text(&v))?;
    Ok(if v.verdict == Verdict::MinimallyRigid { EXIT_OK } else { EXIT_NEGATIVE })
}

pub fn cmd_theorem(g: &Multigraph, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let r = baranyai_test(g, cfg.d(), cfg.theorem_options())?;
    emit(out, cfg, &r, || theorem_text(&r))?;
    Ok(if r.claim == Claim::ClaimsMinimallyRigid { EXIT_OK } else { EXIT_NEGATIVE })
}

pub fn compare_exit(kind: ComparisonKind) -> i32 {
    match kind {
        ComparisonKind::Agreement => EXIT_OK,
        ComparisonKind::NotApplicable => EXIT_NEGATIVE,
        ComparisonKind::Discrepancy => EXIT_DISCREPANCY,
    }
}

pub fn cmd_compare(g: &Multigraph, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let r = compare_with_rank(g, cfg.d(), cfg.trials(), cfg.seed, cfg.theorem_options())?;
    emit(out, cfg, &r, || {
        let mut t = format!("comparison: {:?}\n", r.kind).to_lowercase();
        t.push_str(&theorem_text(&r.theorem));
        t.push_str(&verdict_text(&r.rigidity));
        if let Some(c) = &r.stress_circuit {
            let _ = writeln!(t, "stress circuit: {c:?}");
        }
        t
    })?;
    Ok(compare_exit(r.kind))
}

pub fn cmd_decompose(g: &Multigraph, k: usize, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let outcome = decompose_into_spanning_trees(g, k)?;
    emit(out, cfg, &outcome, || match &outcome {
        DecompositionOutcome::Decomposed(d) => {
            let mut t = String::new();
            for (i, tree) in d.trees.iter().enumerate() {
                let pairs: Vec<_> = tree.iter().map(|&e| g.edge(e).pair()).collect();
                let _ = writeln!(t, "tree {i}: {pairs:?}");
            }
            t
        }
        DecompositionOutcome::Refused(r) => format!("refused: {r:?}\n"),
    })?;
    Ok(if outcome.is_decomposed() { EXIT_OK } else { EXIT_NEGATIVE })
}

#[derive(Debug, Serialize)]
pub struct PinReport {
    pub path: Vec<usize>,
    pub rows: usize,
    pub cols: usize,
    pub invertible: bool,
    pub partition: Option<EliminationPartition>,
}

pub fn cmd_pin(g: &Multigraph, path: Option<&[usize]>, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let d = cfg.d();
    let path = match path {
        Some(vs) => OrderedPath::new(g, vs.to_vec())?,
        None => enumerate_paths(g, d)
            .into_iter()
            .next()
            .ok_or_else(|| CliError::Usage(format!("graph has no path on {d} vertices")))?,
    };
    if path.vertices().len() != d {
        return Err(CliError::Usage(format!(
            "path has {} vertices, --dim is {d}",
            path.vertices().len()
        )));
    }
    let f = random_rational_placement(g, d, cfg.seed);
    let p = build_pinned_system(&f, &path).map_err(|e| CliError::Usage(e.to_string()))?;
    let invertible = pinned_invertible(&p);
    let partition = if invertible {
        Some(extract_tree_partition(&p, cfg.pivot_rule.into()).map_err(|e| CliError::Usage(e.to_string()))?)
    } else {
        None
    };
    let report = PinReport {
        path: path.vertices().to_vec(),
        rows: p.stage_d.rows(),
        cols: p.stage_d.cols(),
        invertible,
        partition,
    };
    let extracted = matches!(
        report.partition.as_ref().map(|part| &part.extraction),
        Some(TreeExtraction::Trees { verified: true, .. })
    );
    emit(out, cfg, &report, || {
        let mut t = format!(
            "path: {:?}\npinned matrix: {}x{} ({})\n",
            report.path,
            report.rows,
            report.cols,
            if invertible { "invertible" } else { "singular" }
        );
        if let Some(part) = &report.partition {
            match &part.extraction {
                TreeExtraction::Trees { trees, verified } => {
                    for (i, tree) in trees.iter().enumerate() {
                        let _ = writeln!(t, "tree {i}: {tree:?}");
                    }
                    let _ = writeln!(t, "verified: {verified}");
                }
                TreeExtraction::Failed { failures } => {
                    for f in failures {
                        let _ = writeln!(t, "finding: {f:?}");
                    }
                }
            }
        }
        t
    })?;
    Ok(if extracted { EXIT_OK } else { EXIT_NEGATIVE })
}

pub fn cmd_scan(
    graphs: &[Multigraph],
    name: &str,
    cfg: &CliConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let options = ScanOptions {
        theorem: cfg.theorem_options(),
        jobs: cfg.jobs,
    };
    let (report, elapsed) = scan_corpus(graphs, name, cfg.d(), cfg.trials(), cfg.seed, options)?;
    emit(out, cfg, &report, || {
        let mut t = format!(
            "corpus: {} ({} graphs, d={})\nagreements: {}\nnot applicable: {}\ndiscrepancies: {}\npaths checked: {}\n",
            report.corpus,
            report.corpus_size,
            report.d,
            report.agreements,
            report.not_applicable,
            report.discrepancies.len(),
            report.stats.paths_checked
        );
        for r in &report.discrepancies {
            let _ = writeln!(t, "discrepancy: {}", r.theorem.graph.to_edge_list_json());
        }
        t
    })?;
    if cfg.format == OutputFormat::Text {
        let _ = writeln!(err, "elapsed: {:.3}s", elapsed.as_secs_f64());
    }
    Ok(if report.discrepancies.is_empty() { EXIT_OK } else { EXIT_DISCREPANCY })
}

pub fn cmd_banana(out: &mut dyn Write) -> Result<i32, CliError> {
    writeln!(out, "{}", double_banana().to_edge_list_json()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })?;
    Ok(EXIT_OK)
}
