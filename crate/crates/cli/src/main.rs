//! `smellsift`: detect test smells in Java test suites and predict flaky
//! tests from them.
//!
//! Exit codes: 0 success, 1 fatal error, 2 partial success (some input
//! files were skipped; outputs cover the rest).

mod commands;
mod config;
mod corpus;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Outcome;
use crate::config::{CliOverrides, OutputFormat};

#[derive(Parser)]
#[command(
    name = "smellsift",
    version,
    about = "Test-smell detection and flaky-test prediction for Java test suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect test smells in a Java test corpus and write per-test records
    Detect(DetectArgs),
    /// Detect smells and join flakiness labels into a feature CSV
    Extract(ExtractArgs),
    /// Balance, split, train classifiers, and evaluate on held-out data
    Train(TrainArgs),
    /// Evaluate stored models against a feature CSV
    Evaluate(EvaluateArgs),
    /// Validate stored models per project context (intra vs. inter)
    Crossval(CrossvalArgs),
    /// Rank features by information gain over a feature CSV
    Rank(RankArgs),
}

/// Options shared by every command. All flags can also come from
/// `SMELLSIFT_*` environment variables or the TOML config file; flags win
/// over the environment, which wins over the file.
#[derive(Args)]
struct CommonOpts {
    /// TOML config file supplying defaults for any option
    #[arg(long, value_name = "FILE", env = "SMELLSIFT_CONFIG")]
    config: Option<PathBuf>,
    /// Directory for all outputs [default: smellsift-out]
    #[arg(long, value_name = "DIR", env = "SMELLSIFT_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
    /// Seed for balancing, splitting, and training [default: 42]
    #[arg(long, env = "SMELLSIFT_SEED")]
    seed: Option<u64>,
    /// Report representation to write [default: both]
    #[arg(long, value_enum, env = "SMELLSIFT_FORMAT")]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct CorpusOpts {
    /// Root directory of the Java test sources
    #[arg(long, value_name = "DIR", env = "SMELLSIFT_TEST_ROOT")]
    test_root: Option<PathBuf>,
    /// Root directory of the production sources (enables the Eager Test
    /// and Lazy Test rules)
    #[arg(long, value_name = "DIR", env = "SMELLSIFT_PROD_ROOT")]
    prod_root: Option<PathBuf>,
    /// Glob filter for source discovery [default: **/*.java]
    #[arg(long, env = "SMELLSIFT_GLOB")]
    glob: Option<String>,
    /// Project name override; by default the first directory under the
    /// test root names the project
    #[arg(long, env = "SMELLSIFT_PROJECT")]
    project: Option<String>,
    /// Statement-count threshold for the Verbose Test rule [default: 123]
    #[arg(long, env = "SMELLSIFT_VERBOSE_THRESHOLD")]
    verbose_threshold: Option<usize>,
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    corpus: CorpusOpts,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    corpus: CorpusOpts,
    /// Labels CSV (`project,test_id,label`) to join with detected tests
    #[arg(long, value_name = "FILE", env = "SMELLSIFT_LABELS")]
    labels: Option<PathBuf>,
    /// Keep tests whose Eager/Lazy rules were skipped, adding a `skipped`
    /// flag column
    #[arg(long, env = "SMELLSIFT_KEEP_SKIPPED")]
    keep_skipped: bool,
}

#[derive(Args)]
struct TrainArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// Feature CSV produced by `extract`
    #[arg(long, value_name = "FILE", env = "SMELLSIFT_FEATURES")]
    features: Option<PathBuf>,
    /// Comma-separated algorithm ids [default: all eight]
    #[arg(long, value_delimiter = ',', env = "SMELLSIFT_ALGOS")]
    algos: Option<Vec<String>>,
    /// Fraction of the balanced data used for training [default: 0.8]
    #[arg(long, env = "SMELLSIFT_TRAIN_FRACTION")]
    train_fraction: Option<f64>,
    /// Split with a plain shuffle instead of per-class stratification
    #[arg(long, env = "SMELLSIFT_NO_STRATIFY")]
    no_stratify: bool,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// A model file or a directory of model files written by `train`
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    /// Feature CSV to evaluate against
    #[arg(long, value_name = "FILE", env = "SMELLSIFT_FEATURES")]
    features: Option<PathBuf>,
}

#[derive(Args)]
struct CrossvalArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// Directory of model files written by `train`
    #[arg(long, value_name = "DIR")]
    models: PathBuf,
    /// The manifest.json written by `train` (supplies training projects)
    #[arg(long, value_name = "FILE")]
    train_manifest: PathBuf,
    /// Validation feature CSV
    #[arg(long, value_name = "FILE", env = "SMELLSIFT_FEATURES")]
    features: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// Feature CSV to rank
    #[arg(long, value_name = "FILE", env = "SMELLSIFT_FEATURES")]
    features: Option<PathBuf>,
}

fn overrides(common: CommonOpts) -> CliOverrides {
    CliOverrides {
        config: common.config,
        output_dir: common.output_dir,
        seed: common.seed,
        format: common.format,
        ..CliOverrides::default()
    }
}

fn with_corpus(mut o: CliOverrides, corpus: CorpusOpts) -> CliOverrides {
    o.test_root = corpus.test_root;
    o.prod_root = corpus.prod_root;
    o.glob = corpus.glob;
    o.project = corpus.project;
    o.verbose_threshold = corpus.verbose_threshold;
    o
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Detect(args) => {
            let config = with_corpus(overrides(args.common), args.corpus).resolve()?;
            commands::detect(&config)
        }
        Command::Extract(args) => {
            let mut o = with_corpus(overrides(args.common), args.corpus);
            o.labels = args.labels;
            o.keep_skipped = args.keep_skipped;
            commands::extract(&o.resolve()?)
        }
        Command::Train(args) => {
            let mut o = overrides(args.common);
            o.features = args.features;
            o.algos = args.algos;
            o.train_fraction = args.train_fraction;
            o.no_stratify = args.no_stratify;
            commands::train(&o.resolve()?)
        }
        Command::Evaluate(args) => {
            let mut o = overrides(args.common);
            o.features = args.features;
            let config = o.resolve()?;
            commands::evaluate(&config, &args.model)
        }
        Command::Crossval(args) => {
            let mut o = overrides(args.common);
            o.features = args.features;
            let config = o.resolve()?;
            commands::crossval(&config, &args.models, &args.train_manifest)
        }
        Command::Rank(args) => {
            let mut o = overrides(args.common);
            o.features = args.features;
            commands::rank(&o.resolve()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; usage errors are
            // fatal (exit 1) to keep 2 reserved for partial runs.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
