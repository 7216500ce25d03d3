//! Dataset construction and sampling: label joins, balancing, splits,
//! and the intra-/inter-project partition.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::smells::{SmellKind, SmellReport};
use crate::Scalar;

use super::{Dataset, DatasetError, FeatureSchema, Label, LabelRecord, LabeledExample};

/// Encodes one smell report as the 21-entry feature vector: 19 binary
/// smells in canonical order, then loc, then smells_count. The count is
/// recomputed from presence rather than trusted from the report.
pub fn build_feature_vector<S: Scalar>(report: &SmellReport) -> Vec<S> {
    let mut values = Vec::with_capacity(SmellKind::ALL.len() + 2);
    for kind in SmellKind::ALL {
        values.push(if report.presence.contains(kind) { S::one() } else { S::zero() });
    }
    values.push(S::from_usize_lossy(report.loc));
    values.push(S::from_usize_lossy(report.presence.count()));
    values
}

/// Join bookkeeping emitted alongside an assembled dataset.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AssembleDiagnostics {
    /// Detected tests with no label row (`project/Class#method`).
    pub unmatched_reports: Vec<String>,
    /// Label rows with no detected test.
    pub unmatched_labels: Vec<String>,
    /// Tests excluded because some rule was skipped for them.
    pub skipped_excluded: Vec<String>,
    /// Skipped tests kept anyway (`keep_skipped` set).
    pub skipped_kept: Vec<String>,
    pub matched: usize,
}

fn report_key(report: &SmellReport) -> (String, String) {
    (report.test_id.project.clone(), report.test_id.qualified_name())
}

/// Inner-joins smell reports with labels into a dataset.
///
/// Tests with skipped rules are excluded unless `keep_skipped` is set;
/// orphans on either side land in the diagnostics, duplicates on either
/// side are format errors.
pub fn assemble_dataset<S: Scalar>(
    reports: &[SmellReport],
    labels: &[LabelRecord],
    keep_skipped: bool,
    source: &str,
) -> Result<(Dataset<S>, AssembleDiagnostics), DatasetError> {
    let mut label_map: BTreeMap<(String, String), Label> = BTreeMap::new();
    for record in labels {
        let key = (record.project.clone(), record.test_id.clone());
        if label_map.insert(key, record.label).is_some() {
            return Err(DatasetError::Format {
                row: None,
                reason: format!(
                    "duplicate label for {}/{}",
                    record.project, record.test_id
                ),
            });
        }
    }

    let mut dataset = Dataset::new(FeatureSchema::v1(), source);
    let mut diagnostics = AssembleDiagnostics::default();
    let mut seen_reports: BTreeMap<(String, String), ()> = BTreeMap::new();

    for report in reports {
        let key = report_key(report);
        if seen_reports.insert(key.clone(), ()).is_some() {
            return Err(DatasetError::Format {
                row: None,
                reason: format!("duplicate smell report for {}/{}", key.0, key.1),
            });
        }
        let display = format!("{}/{}", key.0, key.1);
        let Some(label) = label_map.remove(&key) else {
            diagnostics.unmatched_reports.push(display);
            continue;
        };
        if !report.skipped_rules.is_empty() {
            if keep_skipped {
                diagnostics.skipped_kept.push(display);
            } else {
                diagnostics.skipped_excluded.push(display);
                continue;
            }
        }
        dataset.examples.push(LabeledExample {
            id: report.test_id.clone(),
            values: build_feature_vector(report),
            label,
        });
        diagnostics.matched += 1;
    }

    diagnostics.unmatched_labels =
        label_map.keys().map(|(p, t)| format!("{p}/{t}")).collect();
    Ok((dataset, diagnostics))
}

/// Down-samples the majority class to the minority count, seeded.
///
/// Every minority example is kept; the majority sample is drawn uniformly
/// without replacement; original row order is preserved.
pub fn balance_dataset<S: Scalar>(
    d: &Dataset<S>,
    seed: u64,
) -> Result<Dataset<S>, DatasetError> {
    let (flaky, non_flaky) = d.class_counts();
    if flaky == 0 || non_flaky == 0 {
        return Err(DatasetError::Degenerate {
            reason: format!("balancing needs both classes (flaky={flaky}, non-flaky={non_flaky})"),
        });
    }

    let mut out = d.clone();
    out.provenance.seed = Some(seed);
    if flaky == non_flaky {
        return Ok(out);
    }

    let majority = if flaky > non_flaky { Label::Flaky } else { Label::NonFlaky };
    let minority_count = flaky.min(non_flaky);
    let majority_indices: Vec<usize> = d
        .examples
        .iter()
        .enumerate()
        .filter(|(_, e)| e.label == majority)
        .map(|(i, _)| i)
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen =
        rand::seq::index::sample(&mut rng, majority_indices.len(), minority_count).into_vec();
    chosen.sort_unstable();
    let keep: Vec<bool> = {
        let mut keep = vec![false; d.examples.len()];
        for (i, e) in d.examples.iter().enumerate() {
            if e.label != majority {
                keep[i] = true;
            }
        }
        for pos in chosen {
            keep[majority_indices[pos]] = true;
        }
        keep
    };

    out.examples = d
        .examples
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(e, _)| e.clone())
        .collect();
    Ok(out)
}

/// How to split a dataset into train and test portions.
#[derive(Debug, Clone, Copy)]
pub struct SplitOptions {
    pub train_fraction: f64,
    pub seed: u64,
    /// Split each class separately (default); plain shuffle otherwise.
    pub stratify: bool,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions { train_fraction: 0.8, seed: 42, stratify: true }
    }
}

fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// Seeded train/test split; stratified per class by default. The training
/// size per class is round-half-up of `train_fraction * class size`.
/// Output rows keep the input order.
pub fn split_train_test<S: Scalar>(
    d: &Dataset<S>,
    options: SplitOptions,
) -> Result<(Dataset<S>, Dataset<S>), DatasetError> {
    if !(options.train_fraction > 0.0 && options.train_fraction < 1.0) {
        return Err(DatasetError::Format {
            row: None,
            reason: format!("train fraction {} outside (0, 1)", options.train_fraction),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut in_train = vec![false; d.examples.len()];

    if options.stratify {
        for label in Label::ALL {
            let mut indices: Vec<usize> = d
                .examples
                .iter()
                .enumerate()
                .filter(|(_, e)| e.label == label)
                .map(|(i, _)| i)
                .collect();
            if indices.len() < 2 {
                return Err(DatasetError::Degenerate {
                    reason: format!(
                        "stratified split needs ≥ 2 {} examples, found {}",
                        label,
                        indices.len()
                    ),
                });
            }
            indices.shuffle(&mut rng);
            let take = round_half_up(options.train_fraction * indices.len() as f64);
            for &i in indices.iter().take(take) {
                in_train[i] = true;
            }
        }
    } else {
        let mut indices: Vec<usize> = (0..d.examples.len()).collect();
        if indices.len() < 2 {
            return Err(DatasetError::Degenerate {
                reason: format!("split needs ≥ 2 examples, found {}", indices.len()),
            });
        }
        indices.shuffle(&mut rng);
        let take = round_half_up(options.train_fraction * indices.len() as f64);
        for &i in indices.iter().take(take) {
            in_train[i] = true;
        }
    }

    let mut train = Dataset::new(d.schema.clone(), &d.provenance.source);
    let mut test = Dataset::new(d.schema.clone(), &d.provenance.source);
    train.provenance.seed = Some(options.seed);
    test.provenance.seed = Some(options.seed);
    for (example, train_side) in d.examples.iter().zip(&in_train) {
        if *train_side {
            train.examples.push(example.clone());
        } else {
            test.examples.push(example.clone());
        }
    }
    Ok((train, test))
}

/// Splits validation examples by whether their project occurred in
/// training: (intra, inter). Exhaustive and disjoint by construction.
pub fn partition_cross_project<S: Scalar>(
    training: &Dataset<S>,
    validation: &Dataset<S>,
) -> (Dataset<S>, Dataset<S>) {
    let training_projects = training.projects();
    let mut intra = Dataset::new(validation.schema.clone(), &validation.provenance.source);
    let mut inter = Dataset::new(validation.schema.clone(), &validation.provenance.source);
    for example in &validation.examples {
        if training_projects.contains(example.id.project.as_str()) {
            intra.examples.push(example.clone());
        } else {
            inter.examples.push(example.clone());
        }
    }
    (intra, inter)
}
