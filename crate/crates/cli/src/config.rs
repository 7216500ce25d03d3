//! Run configuration: command-line flags override `SMELLSIFT_*`
//! environment variables, which override the TOML config file, which
//! overrides built-in defaults. (Flag-vs-env precedence is handled by the
//! argument parser; this module merges the rest.)

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use smellsift_core::learners::Algorithm;
use smellsift_core::smells::DEFAULT_VERBOSE_THRESHOLD;

pub const DEFAULT_OUTPUT_DIR: &str = "smellsift-out";
pub const DEFAULT_GLOB: &str = "**/*.java";
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRAIN_FRACTION: f64 = 0.8;

/// Which report representations to write.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Both,
}

impl OutputFormat {
    pub fn text(self) -> bool {
        matches!(self, OutputFormat::Text | OutputFormat::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }
}

/// The TOML config file. Only recognized keys are accepted so typos
/// surface as errors instead of silently applying defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub test_root: Option<PathBuf>,
    pub prod_root: Option<PathBuf>,
    pub labels: Option<PathBuf>,
    pub features: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub train_fraction: Option<f64>,
    pub algorithms: Option<Vec<String>>,
    pub verbose_threshold: Option<usize>,
    pub glob: Option<String>,
    pub project: Option<String>,
    pub format: Option<OutputFormat>,
    pub keep_skipped: Option<bool>,
    pub stratify: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &PathBuf) -> Result<ConfigFile> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        toml::from_str(&text)
            .with_context(|| format!("invalid config file {}", path.display()))
    }
}

/// Everything the parser collected before merging; `None` means the flag
/// and its environment variable were both absent.
#[derive(Debug, Default)]
pub struct CliOverrides {
    pub config: Option<PathBuf>,
    pub test_root: Option<PathBuf>,
    pub prod_root: Option<PathBuf>,
    pub labels: Option<PathBuf>,
    pub features: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub train_fraction: Option<f64>,
    pub algos: Option<Vec<String>>,
    pub verbose_threshold: Option<usize>,
    pub glob: Option<String>,
    pub project: Option<String>,
    pub format: Option<OutputFormat>,
    pub keep_skipped: bool,
    pub no_stratify: bool,
}

/// The fully resolved configuration; every field has a value (path inputs
/// stay optional because each command requires its own subset).
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub test_root: Option<PathBuf>,
    pub prod_root: Option<PathBuf>,
    pub labels: Option<PathBuf>,
    pub features: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub train_fraction: f64,
    pub algorithms: Vec<Algorithm>,
    pub verbose_threshold: usize,
    pub glob: String,
    pub project: Option<String>,
    pub format: OutputFormat,
    pub keep_skipped: bool,
    pub stratify: bool,
}

impl CliOverrides {
    pub fn resolve(self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };

        let algorithm_ids = self.algos.or(file.algorithms);
        let algorithms = match algorithm_ids {
            None => Algorithm::ALL.to_vec(),
            Some(ids) => parse_algorithms(&ids)?,
        };

        let train_fraction = self
            .train_fraction
            .or(file.train_fraction)
            .unwrap_or(DEFAULT_TRAIN_FRACTION);
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            bail!("train fraction {train_fraction} is outside (0, 1)");
        }

        let stratify = if self.no_stratify { false } else { file.stratify.unwrap_or(true) };
        let keep_skipped =
            if self.keep_skipped { true } else { file.keep_skipped.unwrap_or(false) };

        Ok(RunConfig {
            test_root: self.test_root.or(file.test_root),
            prod_root: self.prod_root.or(file.prod_root),
            labels: self.labels.or(file.labels),
            features: self.features.or(file.features),
            output_dir: self
                .output_dir
                .or(file.output_dir)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR)),
            seed: self.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            train_fraction,
            algorithms,
            verbose_threshold: self
                .verbose_threshold
                .or(file.verbose_threshold)
                .unwrap_or(DEFAULT_VERBOSE_THRESHOLD),
            glob: self.glob.or(file.glob).unwrap_or_else(|| DEFAULT_GLOB.to_string()),
            project: self.project.or(file.project),
            format: self.format.or(file.format).unwrap_or(OutputFormat::Both),
            keep_skipped,
            stratify,
        })
    }
}

fn parse_algorithms(ids: &[String]) -> Result<Vec<Algorithm>> {
    if ids.is_empty() {
        bail!("the algorithm list must not be empty");
    }
    let mut seen = BTreeSet::new();
    let mut algorithms = Vec::new();
    for id in ids {
        let id = id.trim();
        let algorithm = Algorithm::from_id(id).with_context(|| {
            let valid: Vec<&str> = Algorithm::ALL.iter().map(|a| a.id()).collect();
            format!("unknown algorithm `{id}`; valid ids: {}", valid.join(", "))
        })?;
        if seen.insert(algorithm.id()) {
            algorithms.push(algorithm);
        }
    }
    Ok(algorithms)
}

impl RunConfig {
    pub fn require_test_root(&self) -> Result<&PathBuf> {
        self.test_root.as_ref().context(
            "a test-source root is required (--test-root, SMELLSIFT_TEST_ROOT, \
             or `test_root` in the config file)",
        )
    }

    pub fn require_labels(&self) -> Result<&PathBuf> {
        self.labels.as_ref().context(
            "a labels file is required (--labels, SMELLSIFT_LABELS, \
             or `labels` in the config file)",
        )
    }

    pub fn require_features(&self) -> Result<&PathBuf> {
        self.features.as_ref().context(
            "a feature CSV is required (--features, SMELLSIFT_FEATURES, \
             or `features` in the config file)",
        )
    }
}
