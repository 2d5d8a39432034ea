//! The `cpccms` command line.
//!
//! Exit codes: 0 on success, 1 on any input error, 2 when the expert matrix
//! is consistent enough to compute but needs revision.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use cpccms_core::io::{
    read_corpus, read_decision_matrix, read_pom, read_predictions, read_timings, write_predictions,
    write_timings,
};
use cpccms_core::metrics::EFFICIENCY;
use cpccms_core::pipeline::{run_demo, DemoConfig, DEMO_MODEL_NAME};
use cpccms_core::report::round_to;
use cpccms_core::textpipe::{NbConfig, PreprocessConfig};
use cpccms_core::{evaluate, rank_models, ConfusionMatrix, CpcReport, TimingSet, Verdict};
use indexmap::IndexMap;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "cpccms", version, about = "Expert-weighted model selection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Criterion weights and accordance of a pairwise opposite matrix.
    Weights(WeightsArgs),
    /// Rank models by their expert-weighted score.
    Rank(RankArgs),
    /// Classification criteria from a predictions file.
    Metrics(MetricsArgs),
    /// Run the TF-IDF + Bernoulli naive Bayes pipeline on a labelled corpus.
    Demo(DemoArgs),
    /// Serve the session HTTP API.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// Matrix JSON: `{"kappa", "criteria", "entries"}`.
    #[arg(long)]
    pub pom: PathBuf,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Round reported numbers to this many decimals.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=15))]
    pub precision: Option<u32>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long)]
    pub pom: PathBuf,
    /// Decision matrix CSV with a `model` column followed by one column per criterion.
    #[arg(long)]
    pub scores: PathBuf,
    /// Running times CSV (`model,seconds`).
    #[arg(long)]
    pub timings: Option<PathBuf>,
    /// Add the efficiency criterion derived from the running times.
    #[arg(long)]
    pub with_efficiency: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=15))]
    pub precision: Option<u32>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Predictions CSV (`true_label,predicted_label`).
    #[arg(long)]
    pub pred: PathBuf,
    /// Comma-separated class labels.
    #[arg(long, value_delimiter = ',', required = true)]
    pub classes: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Corpus CSV (`text,label`).
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    #[arg(long, default_value_t = 101)]
    pub seed: u64,
    /// Train, validation and test fractions.
    #[arg(long, value_delimiter = ',', default_value = "0.8,0.1,0.1")]
    pub split: Vec<f64>,
    /// Smallest and largest n-gram length.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub ngrams: Vec<usize>,
    /// Keep punctuation tokens instead of stripping them.
    #[arg(long)]
    pub keep_punctuation: bool,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
    pub host: IpAddr,
    /// Directory for session snapshots; sessions live in memory only when omitted.
    #[arg(long)]
    pub state_dir: Option<PathBuf>,
    /// Static files served for paths outside the API.
    #[arg(long)]
    pub static_dir: Option<PathBuf>,
}

/// How a successful command finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    NeedsRevision,
}

impl Status {
    fn of(verdict: Verdict) -> Self {
        match verdict {
            Verdict::NeedsRevision => Self::NeedsRevision,
            _ => Self::Ok,
        }
    }

    pub fn exit_code(self) -> ExitCode {
        match self {
            Self::Ok => ExitCode::SUCCESS,
            Self::NeedsRevision => ExitCode::from(2),
        }
    }
}

pub fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Weights(args) => cmd_weights(&args),
        Command::Rank(args) => cmd_rank(&args),
        Command::Metrics(args) => cmd_metrics(&args),
        Command::Demo(args) => cmd_demo(&args),
        Command::Serve(args) => cmd_serve(args),
    }
}

/// Parses `args`, runs the command and maps the outcome to an exit code.
/// Usage errors exit with 1 so that 2 stays reserved for matrices that need revision.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(status) => {
            if status == Status::NeedsRevision {
                eprintln!("warning: accordance index above 0.1, the judgments need revision");
            }
            status.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WeightsReport {
    pub kappa: f64,
    pub criteria: Vec<String>,
    pub utilities: IndexMap<String, f64>,
    pub weights: IndexMap<String, f64>,
    pub ranks: IndexMap<String, usize>,
    pub accordance_index: f64,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

impl WeightsReport {
    pub fn new(report: &CpcReport, precision: Option<u32>) -> Self {
        let round = |x: f64, extra: u32| precision.map_or(x, |d| round_to(x, d + extra));
        let criteria = report.weights.criteria().to_vec();
        let keyed = |values: &[f64]| -> IndexMap<String, f64> {
            criteria
                .iter()
                .cloned()
                .zip(values.iter().map(|v| round(*v, 0)))
                .collect()
        };
        Self {
            kappa: report.kappa,
            utilities: keyed(report.utilities.values()),
            weights: keyed(report.weights.weights()),
            ranks: criteria
                .iter()
                .cloned()
                .zip(report.ranks.iter().copied())
                .collect(),
            accordance_index: round(report.accordance_index, 1),
            verdict: report.verdict,
            warnings: report.warnings.clone(),
            criteria,
        }
    }
}

pub fn cmd_weights(args: &WeightsArgs) -> Result<Status> {
    let pom = read_pom(&args.pom).with_context(|| format!("reading {}", args.pom.display()))?;
    let report = evaluate(&pom)?;
    write_json(
        args.out.as_deref(),
        &WeightsReport::new(&report, args.precision),
    )?;
    Ok(Status::of(report.verdict))
}

pub fn cmd_rank(args: &RankArgs) -> Result<Status> {
    let pom = read_pom(&args.pom).with_context(|| format!("reading {}", args.pom.display()))?;
    let scores = read_decision_matrix(&args.scores)
        .with_context(|| format!("reading {}", args.scores.display()))?;
    let matrix = match (&args.timings, args.with_efficiency) {
        (Some(path), true) => {
            let timings: TimingSet =
                read_timings(path).with_context(|| format!("reading {}", path.display()))?;
            scores.with_efficiency(&timings)?
        }
        (None, true) => {
            ensure!(
                scores.has_criterion(EFFICIENCY),
                "--with-efficiency needs --timings or an `{EFFICIENCY}` column in the scores"
            );
            scores
        }
        (_, false) => scores.without(EFFICIENCY),
    };
    let report = rank_models(&pom, &matrix)?;
    let verdict = report.verdict;
    match args.precision {
        Some(d) => write_json(args.out.as_deref(), &report.rounded(d))?,
        None => write_json(args.out.as_deref(), &report)?,
    }
    Ok(Status::of(verdict))
}

pub fn cmd_metrics(args: &MetricsArgs) -> Result<Status> {
    let classes: Vec<String> = args.classes.iter().map(|c| c.trim().to_string()).collect();
    let rows =
        read_predictions(&args.pred).with_context(|| format!("reading {}", args.pred.display()))?;
    let truth: Vec<&str> = rows.iter().map(|r| r.true_label.as_str()).collect();
    let predicted: Vec<&str> = rows.iter().map(|r| r.predicted_label.as_str()).collect();
    let cm = ConfusionMatrix::from_labels(&truth, &predicted, &classes)?;
    write_json(args.out.as_deref(), &cm.criterion_scores()?)?;
    Ok(Status::Ok)
}

#[derive(Debug, Serialize)]
struct DemoSummary<'a> {
    classes: &'a [String],
    train: usize,
    validation: usize,
    test: usize,
    vocabulary_size: usize,
    ties: usize,
    validation_scores: cpccms_core::CriterionScores,
    test_scores: cpccms_core::CriterionScores,
    outputs: [PathBuf; 3],
}

pub fn demo_config(args: &DemoArgs) -> Result<DemoConfig> {
    let fractions: [f64; 3] =
        args.split.as_slice().try_into().map_err(|_| {
            anyhow::anyhow!("--split takes three fractions, got {}", args.split.len())
        })?;
    let &[lo, hi] = args.ngrams.as_slice() else {
        bail!("--ngrams takes two lengths, got {}", args.ngrams.len());
    };
    ensure!(
        1 <= lo && lo <= hi,
        "--ngrams needs 1 <= min <= max, got {lo},{hi}"
    );
    ensure!(
        args.alpha.is_finite() && args.alpha > 0.0,
        "--alpha must be positive, got {}",
        args.alpha
    );
    Ok(DemoConfig {
        seed: args.seed,
        fractions,
        preprocess: PreprocessConfig {
            keep_punctuation: args.keep_punctuation,
            ngram_range: (lo, hi),
            ..PreprocessConfig::default()
        },
        nb: NbConfig {
            alpha: args.alpha,
            ..NbConfig::default()
        },
    })
}

pub fn cmd_demo(args: &DemoArgs) -> Result<Status> {
    let config = demo_config(args)?;
    let corpus =
        read_corpus(&args.data).with_context(|| format!("reading {}", args.data.display()))?;
    let outcome = run_demo(&corpus, &config)?;

    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    let outputs = ["predictions.csv", "scores.json", "timing.csv"].map(|f| args.out_dir.join(f));
    write_predictions(create(&outputs[0])?, &outcome.predictions)?;
    write_json(Some(&outputs[1]), &outcome.record)?;
    let timings = TimingSet::new([(DEMO_MODEL_NAME, outcome.elapsed_seconds)])?;
    write_timings(create(&outputs[2])?, &timings)?;

    let [train, validation, test] = outcome.sizes;
    write_json(
        None,
        &DemoSummary {
            classes: &outcome.classes,
            train,
            validation,
            test,
            vocabulary_size: outcome.vocabulary_size,
            ties: outcome.ties,
            validation_scores: outcome.validation,
            test_scores: outcome.record.scores,
            outputs,
        },
    )?;
    Ok(Status::Ok)
}

pub fn cmd_serve(args: ServeArgs) -> Result<Status> {
    let config = cpccms_service::ServeConfig {
        addr: SocketAddr::new(args.host, args.port),
        state_dir: args.state_dir,
        static_dir: args.static_dir,
    };
    eprintln!("listening on http://{}", config.addr);
    tokio::runtime::Runtime::new()?
        .block_on(cpccms_service::serve(config))
        .context("server stopped")?;
    Ok(Status::Ok)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

/// Pretty JSON with a trailing newline, to `path` or stdout.
fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut out: Box<dyn Write> = match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
