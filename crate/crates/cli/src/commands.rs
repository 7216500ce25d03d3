//! The six pipeline commands. Each writes its artifacts under the
//! configured output directory plus a `manifest.json` recording inputs,
//! timings, and diagnostics, and reports its outcome for the exit code:
//! clean (0), fatal (1, via `Err`), or partial (2, some files skipped).

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use smellsift_core::eval::tables::{
    render_distribution_table, render_gain_table, render_metrics_table, render_recall_table,
};
use smellsift_core::eval::{
    evaluate as evaluate_model, rank_features, smell_count_distribution, DistributionRow,
    EvalReport, FeatureGain,
};
use smellsift_core::features::{
    assemble_dataset, balance_dataset, read_features_csv, read_labels_csv, split_train_test,
    write_features_csv, write_features_csv_with_skipped, AssembleDiagnostics, Dataset,
    SplitOptions,
};
use smellsift_core::learners::{
    deserialize_model, serialize_model, train as train_model, Algorithm, ModelSpec, TrainedModel,
};
use smellsift_core::smells::io::write_reports_csv;

use crate::config::RunConfig;
use crate::corpus::{scan_corpus, CorpusDiagnostics, ScannedCorpus};
use crate::manifest::{RunManifest, Stopwatch};

/// How a successfully completed command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    /// Some inputs were skipped; outputs cover the rest.
    Partial,
}

fn ensure_output_dir(config: &RunConfig) -> Result<&Path> {
    fs::create_dir_all(&config.output_dir).with_context(|| {
        format!("cannot create output directory {}", config.output_dir.display())
    })?;
    Ok(&config.output_dir)
}

fn write_bytes(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .with_context(|| format!("cannot create {}", parent.display()))?;
    }
    fs::write(&path, bytes).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    let mut bytes = serde_json::to_vec_pretty(value).context("report serialization")?;
    bytes.push(b'\n');
    write_bytes(dir, name, &bytes)
}

fn write_manifest(dir: &Path, manifest: &RunManifest) -> Result<()> {
    write_bytes(dir, "manifest.json", &manifest.to_json()?)?;
    Ok(())
}

fn read_features(path: &Path) -> Result<Dataset<f64>> {
    let file = fs::File::open(path)
        .with_context(|| format!("cannot open feature CSV {}", path.display()))?;
    let dataset = read_features_csv::<f64, _>(file, &path.display().to_string())
        .with_context(|| format!("invalid feature CSV {}", path.display()))?;
    Ok(dataset)
}

fn corpus_counts(manifest: &mut RunManifest, diagnostics: &CorpusDiagnostics) {
    manifest.count("files_scanned", diagnostics.files_scanned);
    manifest.count("files_parsed", diagnostics.files_parsed);
    manifest.count("files_skipped", diagnostics.skipped_files.len());
    manifest.count("test_classes", diagnostics.test_classes);
    manifest.count("test_methods", diagnostics.test_methods);
    manifest.count("unresolved_production", diagnostics.unresolved_production.len());
}

fn corpus_outcome(corpus: &ScannedCorpus) -> Outcome {
    if corpus.diagnostics.skipped_files.is_empty() {
        Outcome::Clean
    } else {
        for skipped in &corpus.diagnostics.skipped_files {
            eprintln!("warning: skipped {}: {}", skipped.path, skipped.reason);
        }
        Outcome::Partial
    }
}

// ---------------------------------------------------------------- detect

pub fn detect(config: &RunConfig) -> Result<Outcome> {
    let mut manifest = RunManifest::new("detect", config);
    let mut watch = Stopwatch::start();

    let corpus = scan_corpus(config)?;
    watch.lap(&mut manifest, "detect");

    let dir = ensure_output_dir(config)?;
    let mut csv_bytes = Vec::new();
    write_reports_csv(&mut csv_bytes, &corpus.reports).context("smell records")?;
    write_bytes(dir, "smells.csv", &csv_bytes)?;
    write_json(dir, "diagnostics.json", &corpus.diagnostics)?;
    watch.lap(&mut manifest, "write");

    manifest.add_digest("corpus", corpus.digest.clone());
    corpus_counts(&mut manifest, &corpus.diagnostics);
    manifest.count("smell_records", corpus.reports.len());
    write_manifest(dir, &manifest)?;

    if corpus.reports.is_empty() {
        eprintln!("warning: no test methods found under the test root");
    }
    println!(
        "detected {} test methods in {} classes -> {}",
        corpus.diagnostics.test_methods,
        corpus.diagnostics.test_classes,
        dir.join("smells.csv").display()
    );
    Ok(corpus_outcome(&corpus))
}

// --------------------------------------------------------------- extract

#[derive(Serialize)]
struct ExtractDiagnostics<'a> {
    corpus: &'a CorpusDiagnostics,
    assembly: &'a AssembleDiagnostics,
}

pub fn extract(config: &RunConfig) -> Result<Outcome> {
    let mut manifest = RunManifest::new("extract", config);
    let mut watch = Stopwatch::start();

    // Labels are read before anything is written: a missing or malformed
    // labels file must not leave partial output behind.
    let labels_path = config.require_labels()?;
    let labels_file = fs::File::open(labels_path)
        .with_context(|| format!("cannot open labels file {}", labels_path.display()))?;
    let labels = read_labels_csv(labels_file)
        .with_context(|| format!("invalid labels file {}", labels_path.display()))?;
    watch.lap(&mut manifest, "labels");

    let corpus = scan_corpus(config)?;
    watch.lap(&mut manifest, "detect");

    let (dataset, assembly) = assemble_dataset::<f64>(
        &corpus.reports,
        &labels,
        config.keep_skipped,
        &config.require_test_root()?.display().to_string(),
    )?;
    watch.lap(&mut manifest, "assemble");

    let dir = ensure_output_dir(config)?;
    let mut csv_bytes = Vec::new();
    if config.keep_skipped {
        let skipped: BTreeSet<(String, String)> = corpus
            .reports
            .iter()
            .filter(|r| !r.skipped_rules.is_empty())
            .map(|r| (r.test_id.project.clone(), r.test_id.qualified_name()))
            .collect();
        write_features_csv_with_skipped(&mut csv_bytes, &dataset, &skipped)?;
    } else {
        write_features_csv(&mut csv_bytes, &dataset)?;
    }
    write_bytes(dir, "features.csv", &csv_bytes)?;
    write_json(dir, "diagnostics.json", &ExtractDiagnostics {
        corpus: &corpus.diagnostics,
        assembly: &assembly,
    })?;
    watch.lap(&mut manifest, "write");

    manifest.add_digest("corpus", corpus.digest.clone());
    manifest.add_file_digest("labels", labels_path)?;
    corpus_counts(&mut manifest, &corpus.diagnostics);
    manifest.count("examples", dataset.len());
    manifest.count("matched", assembly.matched);
    manifest.count("unmatched_reports", assembly.unmatched_reports.len());
    manifest.count("unmatched_labels", assembly.unmatched_labels.len());
    manifest.count("skipped_excluded", assembly.skipped_excluded.len());
    manifest.count("skipped_kept", assembly.skipped_kept.len());
    write_manifest(dir, &manifest)?;

    if dataset.is_empty() {
        eprintln!("warning: no detected test matched a label row");
    }
    println!(
        "extracted {} labeled examples -> {}",
        dataset.len(),
        dir.join("features.csv").display()
    );
    Ok(corpus_outcome(&corpus))
}

// ----------------------------------------------------------------- train

#[derive(Serialize)]
struct TrainReport {
    seed: u64,
    train_fraction: f64,
    stratified: bool,
    input_examples: usize,
    input_flaky: usize,
    input_non_flaky: usize,
    balanced_examples: usize,
    train_examples: usize,
    test_examples: usize,
    per_algorithm: BTreeMap<String, EvalReport>,
}

pub fn train(config: &RunConfig) -> Result<Outcome> {
    let mut manifest = RunManifest::new("train", config);
    let mut watch = Stopwatch::start();

    let features_path = config.require_features()?.clone();
    let dataset = read_features(&features_path)?;
    manifest.add_file_digest("features", &features_path)?;
    watch.lap(&mut manifest, "load");

    let (input_flaky, input_non_flaky) = dataset.class_counts();
    let balanced = balance_dataset(&dataset, config.seed)?;
    let (train_set, test_set) = split_train_test(
        &balanced,
        SplitOptions {
            train_fraction: config.train_fraction,
            seed: config.seed,
            stratify: config.stratify,
        },
    )?;
    watch.lap(&mut manifest, "split");

    let dir = ensure_output_dir(config)?;
    let mut rows: Vec<(String, EvalReport)> = Vec::new();
    let mut per_algorithm = BTreeMap::new();
    for algorithm in &config.algorithms {
        let spec = ModelSpec::with_defaults(*algorithm, config.seed);
        let model = train_model(&spec, &train_set)
            .with_context(|| format!("training {}", algorithm.id()))?;
        let bytes = serialize_model(&model).context("model serialization")?;
        write_bytes(dir, &format!("models/{}.json", algorithm.id()), &bytes)?;
        let report = evaluate_model(&model, &test_set)
            .with_context(|| format!("evaluating {}", algorithm.id()))?;
        per_algorithm.insert(algorithm.id().to_string(), report.clone());
        rows.push((algorithm.display_name().to_string(), report));
    }
    watch.lap(&mut manifest, "train");

    let report = TrainReport {
        seed: config.seed,
        train_fraction: config.train_fraction,
        stratified: config.stratify,
        input_examples: dataset.len(),
        input_flaky,
        input_non_flaky,
        balanced_examples: balanced.len(),
        train_examples: train_set.len(),
        test_examples: test_set.len(),
        per_algorithm,
    };
    let table = render_metrics_table(&rows);
    if config.format.json() {
        write_json(dir, "train_report.json", &report)?;
    }
    if config.format.text() {
        write_bytes(dir, "train_report.txt", table.as_bytes())?;
        print!("{table}");
    }
    watch.lap(&mut manifest, "report");

    let projects: Vec<String> =
        train_set.projects().into_iter().map(str::to_string).collect();
    manifest.training_projects = Some(projects);
    manifest.count("examples", dataset.len());
    manifest.count("balanced_examples", balanced.len());
    manifest.count("train_examples", train_set.len());
    manifest.count("test_examples", test_set.len());
    manifest.count("algorithms", config.algorithms.len());
    write_manifest(dir, &manifest)?;

    println!("trained {} models -> {}", config.algorithms.len(), dir.join("models").display());
    Ok(Outcome::Clean)
}

// -------------------------------------------------------------- evaluate

fn load_models(path: &Path) -> Result<Vec<(PathBuf, TrainedModel<f64>)>> {
    let mut paths = Vec::new();
    if path.is_dir() {
        for entry in fs::read_dir(path)
            .with_context(|| format!("cannot read model directory {}", path.display()))?
        {
            let entry = entry?;
            let p = entry.path();
            if p.extension().is_some_and(|e| e == "json") && p.is_file() {
                paths.push(p);
            }
        }
        paths.sort();
        if paths.is_empty() {
            bail!("no .json model files found in {}", path.display());
        }
    } else if path.is_file() {
        paths.push(path.to_path_buf());
    } else {
        bail!("model path {} does not exist", path.display());
    }

    let mut models = Vec::new();
    let mut seen = BTreeSet::new();
    for p in paths {
        let bytes =
            fs::read(&p).with_context(|| format!("cannot read model file {}", p.display()))?;
        let model = deserialize_model::<f64>(&bytes)
            .map_err(|e| anyhow::anyhow!("invalid model file {}: {e}", p.display()))?;
        if !seen.insert(model.spec.algorithm) {
            bail!("duplicate {} model in {}", model.spec.algorithm.id(), path.display());
        }
        models.push((p, model));
    }
    // Stable report order regardless of file names.
    models.sort_by_key(|(_, m)| {
        Algorithm::ALL.iter().position(|a| *a == m.spec.algorithm).unwrap_or(usize::MAX)
    });
    Ok(models)
}

#[derive(Serialize)]
struct EvaluateReport {
    examples: usize,
    per_algorithm: BTreeMap<String, EvalReport>,
}

pub fn evaluate(config: &RunConfig, model_path: &Path) -> Result<Outcome> {
    let mut manifest = RunManifest::new("evaluate", config);
    let mut watch = Stopwatch::start();

    let features_path = config.require_features()?.clone();
    let dataset = read_features(&features_path)?;
    manifest.add_file_digest("features", &features_path)?;

    let models = load_models(model_path)?;
    for (path, _) in &models {
        manifest.add_file_digest(&format!("model:{}", path.display()), path)?;
    }
    watch.lap(&mut manifest, "load");

    let mut rows = Vec::new();
    let mut per_algorithm = BTreeMap::new();
    for (_, model) in &models {
        let report = evaluate_model(model, &dataset)
            .with_context(|| format!("evaluating {}", model.spec.algorithm.id()))?;
        per_algorithm.insert(model.spec.algorithm.id().to_string(), report.clone());
        rows.push((model.spec.algorithm.display_name().to_string(), report));
    }
    watch.lap(&mut manifest, "evaluate");

    let dir = ensure_output_dir(config)?;
    let report = EvaluateReport { examples: dataset.len(), per_algorithm };
    let table = render_metrics_table(&rows);
    if config.format.json() {
        write_json(dir, "eval_report.json", &report)?;
    }
    if config.format.text() {
        write_bytes(dir, "eval_report.txt", table.as_bytes())?;
        print!("{table}");
    }
    manifest.count("examples", dataset.len());
    manifest.count("models", models.len());
    write_manifest(dir, &manifest)?;
    Ok(Outcome::Clean)
}

// -------------------------------------------------------------- crossval

#[derive(serde::Deserialize)]
struct TrainingManifestFields {
    training_projects: Option<Vec<String>>,
}

#[derive(Serialize)]
struct ContextSection {
    context: String,
    examples: usize,
    notes: Vec<String>,
    per_algorithm: BTreeMap<String, EvalReport>,
}

#[derive(Serialize)]
struct CrossvalReport {
    training_projects: Vec<String>,
    contexts: Vec<ContextSection>,
}

pub fn crossval(
    config: &RunConfig,
    models_path: &Path,
    train_manifest_path: &Path,
) -> Result<Outcome> {
    let mut manifest = RunManifest::new("crossval", config);
    let mut watch = Stopwatch::start();

    let manifest_text = fs::read_to_string(train_manifest_path).with_context(|| {
        format!("cannot read training manifest {}", train_manifest_path.display())
    })?;
    let fields: TrainingManifestFields = serde_json::from_str(&manifest_text)
        .with_context(|| format!("invalid manifest {}", train_manifest_path.display()))?;
    let training_projects: Vec<String> = fields.training_projects.with_context(|| {
        format!(
            "{} records no training_projects; pass the manifest written by `train`",
            train_manifest_path.display()
        )
    })?;
    let project_set: BTreeSet<&str> = training_projects.iter().map(String::as_str).collect();

    let features_path = config.require_features()?.clone();
    let validation = read_features(&features_path)?;
    manifest.add_file_digest("features", &features_path)?;
    manifest.add_file_digest("training_manifest", train_manifest_path)?;
    let models = load_models(models_path)?;
    for (path, _) in &models {
        manifest.add_file_digest(&format!("model:{}", path.display()), path)?;
    }
    watch.lap(&mut manifest, "load");

    // Intra: projects seen in training; inter: everything else.
    let mut intra = Dataset::<f64>::new(validation.schema.clone(), "intra-project");
    let mut inter = Dataset::<f64>::new(validation.schema.clone(), "inter-project");
    for example in &validation.examples {
        if project_set.contains(example.id.project.as_str()) {
            intra.examples.push(example.clone());
        } else {
            inter.examples.push(example.clone());
        }
    }

    let mut contexts = Vec::new();
    let mut sections = Vec::new();
    for (key, title, subset) in [
        ("intra_project", "Intra-project validation", &intra),
        ("inter_project", "Inter-project validation", &inter),
    ] {
        let mut notes = Vec::new();
        let mut per_algorithm = BTreeMap::new();
        let mut rows = Vec::new();
        if subset.is_empty() {
            notes.push("no validation examples in this context".to_string());
        } else {
            for (_, model) in &models {
                let report = evaluate_model(model, subset)
                    .with_context(|| format!("evaluating {}", model.spec.algorithm.id()))?;
                per_algorithm.insert(model.spec.algorithm.id().to_string(), report.clone());
                rows.push((model.spec.algorithm.display_name().to_string(), report));
            }
        }
        contexts.push(ContextSection {
            context: key.to_string(),
            examples: subset.len(),
            notes,
            per_algorithm,
        });
        sections.push((format!("{title} ({} examples)", subset.len()), rows));
    }
    watch.lap(&mut manifest, "evaluate");

    let dir = ensure_output_dir(config)?;
    let report = CrossvalReport { training_projects, contexts };
    let table = render_recall_table(&sections);
    if config.format.json() {
        write_json(dir, "crossval_report.json", &report)?;
    }
    if config.format.text() {
        write_bytes(dir, "crossval_report.txt", table.as_bytes())?;
        print!("{table}");
    }
    manifest.count("examples", validation.len());
    manifest.count("intra_examples", intra.len());
    manifest.count("inter_examples", inter.len());
    manifest.count("models", models.len());
    write_manifest(dir, &manifest)?;
    Ok(Outcome::Clean)
}

// ------------------------------------------------------------------ rank

#[derive(Serialize)]
struct RankReport {
    examples: usize,
    gains: Vec<FeatureGain>,
    distribution: Vec<DistributionRow>,
}

fn gains_csv(gains: &[FeatureGain]) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "position",
            "feature",
            "information_gain",
            "affected_total",
            "affected_flaky",
            "percent_flaky",
            "affected_non_flaky",
            "percent_non_flaky",
        ])
        .context("gain CSV header")?;
    for (i, g) in gains.iter().enumerate() {
        writer
            .write_record([
                (i + 1).to_string(),
                g.feature.clone(),
                format!("{}", g.information_gain),
                g.affected_total.to_string(),
                g.affected_flaky.to_string(),
                format!("{}", g.percent_flaky),
                g.affected_non_flaky.to_string(),
                format!("{}", g.percent_non_flaky),
            ])
            .context("gain CSV row")?;
    }
    writer.into_inner().context("gain CSV")
}

pub fn rank(config: &RunConfig) -> Result<Outcome> {
    let mut manifest = RunManifest::new("rank", config);
    let mut watch = Stopwatch::start();

    let features_path = config.require_features()?.clone();
    let dataset = read_features(&features_path)?;
    manifest.add_file_digest("features", &features_path)?;
    watch.lap(&mut manifest, "load");

    let gains = rank_features(&dataset);
    let distribution = smell_count_distribution(&dataset);
    watch.lap(&mut manifest, "rank");

    let dir = ensure_output_dir(config)?;
    write_bytes(dir, "feature_gains.csv", &gains_csv(&gains)?)?;
    let gain_table = render_gain_table(&gains);
    let distribution_table = render_distribution_table(&distribution);
    if config.format.json() {
        let report = RankReport {
            examples: dataset.len(),
            gains: gains.clone(),
            distribution: distribution.clone(),
        };
        write_json(dir, "feature_gains.json", &report)?;
    }
    if config.format.text() {
        write_bytes(dir, "feature_gains.txt", gain_table.as_bytes())?;
        write_bytes(dir, "distribution.txt", distribution_table.as_bytes())?;
        print!("{gain_table}");
    }
    manifest.count("examples", dataset.len());
    manifest.count("features", gains.len());
    write_manifest(dir, &manifest)?;
    Ok(Outcome::Clean)
}
