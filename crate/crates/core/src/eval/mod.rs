//! Evaluation: confusion-matrix metrics, rank-based ROC AUC, per-feature
//! information gain, and the smell-count distribution.
//!
//! Undefined 0/0 metric cells are reported as 0 together with an
//! explanatory note instead of failing, so single-class validation sets
//! still produce recall/TP/FN reports.

pub mod tables;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::features::{Dataset, FeatureKind, Label};
use crate::learners::{ModelError, TrainedModel};
use crate::Scalar;

/// Counts with flaky as the positive class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub true_negatives: usize,
}

impl ConfusionMatrix {
    pub fn new(tp: usize, fp: usize, fn_: usize, tn: usize) -> Self {
        ConfusionMatrix {
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_,
            true_negatives: tn,
        }
    }

    /// Tallies (predicted, actual) pairs.
    pub fn from_pairs(pairs: &[(Label, Label)]) -> Self {
        let mut m = ConfusionMatrix::default();
        for (predicted, actual) in pairs {
            match (predicted, actual) {
                (Label::Flaky, Label::Flaky) => m.true_positives += 1,
                (Label::Flaky, Label::NonFlaky) => m.false_positives += 1,
                (Label::NonFlaky, Label::Flaky) => m.false_negatives += 1,
                (Label::NonFlaky, Label::NonFlaky) => m.true_negatives += 1,
            }
        }
        m
    }

    pub fn total(&self) -> usize {
        self.true_positives + self.false_positives + self.false_negatives + self.true_negatives
    }

    /// tp / (tp + fp); 0 when the denominator is 0.
    pub fn precision(&self) -> f64 {
        ratio(self.true_positives, self.true_positives + self.false_positives)
    }

    /// tp / (tp + fn); 0 when the denominator is 0.
    pub fn recall(&self) -> f64 {
        ratio(self.true_positives, self.true_positives + self.false_negatives)
    }

    /// Harmonic mean of precision and recall; 0 when both are 0.
    pub fn f1(&self) -> f64 {
        let p = self.precision();
        let r = self.recall();
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    }

    /// Matthews correlation coefficient in f64; 0 when any marginal is 0.
    pub fn mcc(&self) -> f64 {
        let tp = self.true_positives as f64;
        let fp = self.false_positives as f64;
        let fn_ = self.false_negatives as f64;
        let tn = self.true_negatives as f64;
        let denominator = ((tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_)).sqrt();
        if denominator == 0.0 {
            0.0
        } else {
            (tp * tn - fp * fn_) / denominator
        }
    }

    /// One note per metric whose denominator vanished.
    pub fn undefined_notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.true_positives + self.false_positives == 0 {
            notes.push("precision undefined (no flaky predictions), reported as 0".to_string());
        }
        if self.true_positives + self.false_negatives == 0 {
            notes.push("recall undefined (no flaky examples), reported as 0".to_string());
        }
        if self.precision() + self.recall() == 0.0 {
            notes.push("F1 undefined (precision and recall both 0), reported as 0".to_string());
        }
        let any_zero_marginal = [
            self.true_positives + self.false_positives,
            self.true_positives + self.false_negatives,
            self.true_negatives + self.false_positives,
            self.true_negatives + self.false_negatives,
        ]
        .iter()
        .any(|&m| m == 0);
        if any_zero_marginal {
            notes.push("MCC undefined (zero marginal), reported as 0".to_string());
        }
        notes
    }
}

fn ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}

/// Rank-based ROC AUC with average ranks for ties: the probability that a
/// random flaky example outscores a random non-flaky one, ties counting ½.
/// None when only one class is present.
pub fn roc_auc(scored: &[(f64, Label)]) -> Option<f64> {
    let n_flaky = scored.iter().filter(|(_, l)| l.is_flaky()).count();
    let n_non_flaky = scored.len() - n_flaky;
    if n_flaky == 0 || n_non_flaky == 0 {
        return None;
    }

    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&a, &b| scored[a].0.partial_cmp(&scored[b].0).expect("scores must not be NaN"));

    // Average rank over each tie group (ranks are 1-based).
    let mut flaky_rank_sum = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && scored[order[end + 1]].0 == scored[order[start]].0 {
            end += 1;
        }
        let average_rank = (start + 1 + end + 1) as f64 / 2.0;
        for &index in &order[start..=end] {
            if scored[index].1.is_flaky() {
                flaky_rank_sum += average_rank;
            }
        }
        start = end + 1;
    }

    let n1 = n_flaky as f64;
    let n0 = n_non_flaky as f64;
    Some((flaky_rank_sum - n1 * (n1 + 1.0) / 2.0) / (n1 * n0))
}

/// One feature's information gain plus Table-4-style affected counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureGain {
    pub feature: String,
    /// H(label) − H(label | feature) in bits, non-negative.
    pub information_gain: f64,
    /// Affected examples: value = 1 for smells, everything for loc,
    /// count ≥ 1 for smells_count.
    pub affected_total: usize,
    pub affected_flaky: usize,
    pub affected_non_flaky: usize,
    /// Fractions of `affected_total` (0 when nothing is affected).
    pub percent_flaky: f64,
    pub percent_non_flaky: f64,
}

fn entropy_bits(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let mut h = 0.0;
    for &count in counts {
        if count > 0 {
            let p = count as f64 / total as f64;
            h -= p * p.log2();
        }
    }
    h
}

/// Bin edges at the empirical quantiles of up to `max_bins` equal-frequency
/// bins; duplicate edges merged. A value falls into the bin counting the
/// edges strictly below it (bins are upper-inclusive).
fn equal_frequency_edges(sorted: &[f64], max_bins: usize) -> Vec<f64> {
    let n = sorted.len();
    if n == 0 || max_bins < 2 {
        return Vec::new();
    }
    let mut edges = Vec::new();
    for b in 1..max_bins {
        let position = (b * n).div_ceil(max_bins) - 1;
        let edge = sorted[position];
        if edges.last() != Some(&edge) {
            edges.push(edge);
        }
    }
    // The top quantile edge may equal the maximum; an edge at the maximum
    // still defines a valid upper-inclusive bin boundary.
    edges
}

fn bin_index(edges: &[f64], value: f64) -> usize {
    edges.iter().filter(|&&e| e < value).count()
}

/// Information gain of one feature with plug-in entropies in bits. Numeric
/// features are discretized into up to 10 equal-frequency bins first.
pub fn information_gain<S: Scalar>(dataset: &Dataset<S>, feature: usize) -> FeatureGain {
    assert!(feature < dataset.schema.len(), "feature index out of range");
    let name = dataset.schema.names[feature].clone();
    let kind = dataset.schema.kinds[feature];
    let n = dataset.len();

    let values: Vec<f64> =
        dataset.examples.iter().map(|e| e.values[feature].to_f64_lossy()).collect();
    let labels: Vec<Label> = dataset.examples.iter().map(|e| e.label).collect();

    // Group index per example.
    let groups: Vec<usize> = match kind {
        FeatureKind::Binary => values.iter().map(|&v| usize::from(v == 1.0)).collect(),
        FeatureKind::Numeric => {
            let mut sorted = values.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).expect("values must not be NaN"));
            let edges = equal_frequency_edges(&sorted, 10);
            values.iter().map(|&v| bin_index(&edges, v)).collect()
        }
    };

    let mut per_group: BTreeMap<usize, [usize; 2]> = BTreeMap::new();
    for (group, label) in groups.iter().zip(&labels) {
        let counts = per_group.entry(*group).or_insert([0, 0]);
        counts[usize::from(!label.is_flaky())] += 1;
    }

    let flaky_total = labels.iter().filter(|l| l.is_flaky()).count();
    let label_entropy = entropy_bits(&[flaky_total, n - flaky_total]);
    let conditional: f64 = per_group
        .values()
        .map(|counts| {
            let size = counts[0] + counts[1];
            (size as f64 / n as f64) * entropy_bits(counts)
        })
        .sum();
    let gain = (label_entropy - conditional).max(0.0);

    // Affected counts per the reporting convention.
    let affected: Vec<bool> = match (kind, name.as_str()) {
        (FeatureKind::Binary, _) => values.iter().map(|&v| v == 1.0).collect(),
        (FeatureKind::Numeric, "smells_count") => values.iter().map(|&v| v >= 1.0).collect(),
        (FeatureKind::Numeric, _) => vec![true; n],
    };
    let affected_flaky = affected
        .iter()
        .zip(&labels)
        .filter(|(a, l)| **a && l.is_flaky())
        .count();
    let affected_total = affected.iter().filter(|a| **a).count();
    let affected_non_flaky = affected_total - affected_flaky;

    FeatureGain {
        feature: name,
        information_gain: gain,
        affected_total,
        affected_flaky,
        affected_non_flaky,
        percent_flaky: ratio(affected_flaky, affected_total),
        percent_non_flaky: ratio(affected_non_flaky, affected_total),
    }
}

/// All feature gains, descending; equal gains keep canonical feature order.
pub fn rank_features<S: Scalar>(dataset: &Dataset<S>) -> Vec<FeatureGain> {
    let mut gains: Vec<FeatureGain> =
        (0..dataset.schema.len()).map(|f| information_gain(dataset, f)).collect();
    gains.sort_by(|a, b| {
        b.information_gain
            .partial_cmp(&a.information_gain)
            .expect("gains are finite")
    });
    gains
}

/// One row of the smell-count distribution; percents are row-relative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub smells_count: usize,
    pub non_flaky: usize,
    pub non_flaky_percent: f64,
    pub flaky: usize,
    pub flaky_percent: f64,
}

/// Rows keyed by smells_count ascending; row sizes sum to the dataset size.
pub fn smell_count_distribution<S: Scalar>(dataset: &Dataset<S>) -> Vec<DistributionRow> {
    let count_index = dataset.schema.len() - 1;
    debug_assert_eq!(dataset.schema.names[count_index], "smells_count");
    let mut per_count: BTreeMap<usize, [usize; 2]> = BTreeMap::new();
    for e in &dataset.examples {
        let count = e.values[count_index].to_f64_lossy().round() as usize;
        let counts = per_count.entry(count).or_insert([0, 0]);
        counts[usize::from(!e.label.is_flaky())] += 1;
    }
    per_count
        .into_iter()
        .map(|(smells_count, [flaky, non_flaky])| {
            let total = flaky + non_flaky;
            DistributionRow {
                smells_count,
                non_flaky,
                non_flaky_percent: ratio(non_flaky, total),
                flaky,
                flaky_percent: ratio(flaky, total),
            }
        })
        .collect()
}

/// Metrics of one model over one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub matrix: ConfusionMatrix,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub mcc: f64,
    pub auc: Option<f64>,
    pub notes: Vec<String>,
}

impl EvalReport {
    pub fn from_matrix(matrix: ConfusionMatrix, auc: Option<f64>) -> Self {
        let mut notes = matrix.undefined_notes();
        if auc.is_none() {
            notes.push("AUC undefined: single-class validation set".to_string());
        }
        EvalReport {
            precision: matrix.precision(),
            recall: matrix.recall(),
            f1: matrix.f1(),
            mcc: matrix.mcc(),
            matrix,
            auc,
            notes,
        }
    }
}

/// Scores every example with the model and assembles the report.
pub fn evaluate<S: Scalar>(
    model: &TrainedModel<S>,
    dataset: &Dataset<S>,
) -> Result<EvalReport, ModelError> {
    let mut pairs = Vec::with_capacity(dataset.len());
    let mut scored = Vec::with_capacity(dataset.len());
    for example in &dataset.examples {
        let prediction = model.predict(&example.values)?;
        pairs.push((prediction.label, example.label));
        scored.push((prediction.score, example.label));
    }
    let matrix = ConfusionMatrix::from_pairs(&pairs);
    Ok(EvalReport::from_matrix(matrix, roc_auc(&scored)))
}
