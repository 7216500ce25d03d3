//! Mixed naive Bayes: Bernoulli likelihoods with Laplace smoothing for the
//! binary smell features, Gaussian likelihoods (variance-floored) for the
//! numeric ones. Scores are posteriors of the flaky class.

use serde::{Deserialize, Serialize};

use crate::features::{Dataset, FeatureKind, Label};
use crate::Scalar;

use super::ModelSpec;

/// Per-feature class-conditional parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
#[serde(bound = "")]
pub enum NbFeature<S: Scalar> {
    Bernoulli {
        p_flaky: S,
        p_non_flaky: S,
    },
    Gaussian {
        mean_flaky: S,
        var_flaky: S,
        mean_non_flaky: S,
        var_non_flaky: S,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct NaiveBayesModel<S: Scalar> {
    pub log_prior_flaky: S,
    pub log_prior_non_flaky: S,
    pub features: Vec<NbFeature<S>>,
}

pub(crate) fn train_naive_bayes<S: Scalar>(
    spec: &ModelSpec,
    dataset: &Dataset<S>,
) -> NaiveBayesModel<S> {
    let alpha = S::from_f64_lossy(spec.param("alpha"));
    let floor = S::from_f64_lossy(spec.param("variance_floor"));
    let (flaky_n, non_flaky_n) = dataset.class_counts();
    let total = S::from_usize_lossy(dataset.len());

    let class_rows = |label: Label| -> Vec<&Vec<S>> {
        dataset
            .examples
            .iter()
            .filter(|e| e.label == label)
            .map(|e| &e.values)
            .collect()
    };
    let flaky_rows = class_rows(Label::Flaky);
    let non_flaky_rows = class_rows(Label::NonFlaky);

    let bernoulli_p = |rows: &[&Vec<S>], feature: usize| -> S {
        let ones: S = rows.iter().map(|r| r[feature]).sum();
        let n = S::from_usize_lossy(rows.len());
        (ones + alpha) / (n + alpha + alpha)
    };
    let gaussian = |rows: &[&Vec<S>], feature: usize| -> (S, S) {
        let n = S::from_usize_lossy(rows.len());
        let mean = rows.iter().map(|r| r[feature]).sum::<S>() / n;
        let var = rows
            .iter()
            .map(|r| {
                let d = r[feature] - mean;
                d * d
            })
            .sum::<S>()
            / n;
        (mean, var.max(floor))
    };

    let features = (0..dataset.schema.len())
        .map(|feature| match dataset.schema.kinds[feature] {
            FeatureKind::Binary => NbFeature::Bernoulli {
                p_flaky: bernoulli_p(&flaky_rows, feature),
                p_non_flaky: bernoulli_p(&non_flaky_rows, feature),
            },
            FeatureKind::Numeric => {
                let (mean_flaky, var_flaky) = gaussian(&flaky_rows, feature);
                let (mean_non_flaky, var_non_flaky) = gaussian(&non_flaky_rows, feature);
                NbFeature::Gaussian { mean_flaky, var_flaky, mean_non_flaky, var_non_flaky }
            }
        })
        .collect();

    NaiveBayesModel {
        log_prior_flaky: (S::from_usize_lossy(flaky_n) / total).ln(),
        log_prior_non_flaky: (S::from_usize_lossy(non_flaky_n) / total).ln(),
        features,
    }
}

impl<S: Scalar> NaiveBayesModel<S> {
    /// Posterior probability of the flaky class.
    pub fn score(&self, values: &[S]) -> f64 {
        let one = S::one();
        let two_pi = S::from_f64_lossy(std::f64::consts::TAU);
        let half = S::from_f64_lossy(0.5);

        let mut log_flaky = self.log_prior_flaky;
        let mut log_non_flaky = self.log_prior_non_flaky;
        for (feature, x) in self.features.iter().zip(values) {
            match feature {
                NbFeature::Bernoulli { p_flaky, p_non_flaky } => {
                    // x·ln p + (1−x)·ln(1−p); exact for x ∈ {0,1}.
                    log_flaky = log_flaky
                        + *x * p_flaky.ln()
                        + (one - *x) * (one - *p_flaky).ln();
                    log_non_flaky = log_non_flaky
                        + *x * p_non_flaky.ln()
                        + (one - *x) * (one - *p_non_flaky).ln();
                }
                NbFeature::Gaussian { mean_flaky, var_flaky, mean_non_flaky, var_non_flaky } => {
                    let log_pdf = |mean: S, var: S| {
                        let d = *x - mean;
                        -half * (two_pi * var).ln() - d * d / (var + var)
                    };
                    log_flaky = log_flaky + log_pdf(*mean_flaky, *var_flaky);
                    log_non_flaky = log_non_flaky + log_pdf(*mean_non_flaky, *var_non_flaky);
                }
            }
        }
        // 1 / (1 + exp(log_non_flaky − log_flaky)), computed stably.
        let delta = (log_non_flaky - log_flaky).to_f64_lossy();
        if delta > 0.0 {
            let e = (-delta).exp();
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + delta.exp())
        }
    }
}
