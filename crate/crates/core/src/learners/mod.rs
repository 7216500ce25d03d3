//! Eight from-scratch classifiers behind a uniform train/predict/score
//! contract with deterministic seeding.
//!
//! Probabilistic models (forest, tree, naive Bayes, KNN, logistic
//! regression) score in [0,1] with decision threshold 0.5; margin models
//! (perceptron, linear SVM, LDA) score on ℝ with threshold 0. A score
//! exactly at the threshold resolves to non-flaky.

mod forest;
mod knn;
mod linear;
mod naive_bayes;
mod tree;

pub use linear::{logistic_loss_and_gradient, LinearModel, ScoreKind, Standardizer};
pub use naive_bayes::{NaiveBayesModel, NbFeature};
pub use tree::{TreeModel, TreeNode};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::features::{Dataset, FeatureSchema, Label};
use crate::Scalar;

/// Current model-file format. Bumped on any breaking layout change.
pub const MODEL_FORMAT_VERSION: u32 = 1;

/// The eight supported algorithms, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    RandomForest,
    DecisionTree,
    NaiveBayes,
    SvmLinear,
    LogisticRegression,
    Lda,
    Knn,
    Perceptron,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::RandomForest,
        Algorithm::DecisionTree,
        Algorithm::NaiveBayes,
        Algorithm::SvmLinear,
        Algorithm::LogisticRegression,
        Algorithm::Lda,
        Algorithm::Knn,
        Algorithm::Perceptron,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::RandomForest => "random_forest",
            Algorithm::DecisionTree => "decision_tree",
            Algorithm::NaiveBayes => "naive_bayes",
            Algorithm::SvmLinear => "svm_linear",
            Algorithm::LogisticRegression => "logistic_regression",
            Algorithm::Lda => "lda",
            Algorithm::Knn => "knn",
            Algorithm::Perceptron => "perceptron",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Algorithm::RandomForest => "Random Forest",
            Algorithm::DecisionTree => "Decision Tree",
            Algorithm::NaiveBayes => "Naive Bayes",
            Algorithm::SvmLinear => "SVM",
            Algorithm::LogisticRegression => "Logistic Regression",
            Algorithm::Lda => "LDA",
            Algorithm::Knn => "KNN",
            Algorithm::Perceptron => "Perceptron",
        }
    }

    pub fn from_id(id: &str) -> Option<Algorithm> {
        Algorithm::ALL.iter().copied().find(|a| a.id() == id)
    }

    /// Default hyperparameters, all of which are overridable.
    pub fn default_params(self) -> BTreeMap<String, f64> {
        let pairs: &[(&str, f64)] = match self {
            Algorithm::RandomForest => &[("trees", 100.0), ("mtry", 5.0), ("bootstrap", 1.0)],
            Algorithm::DecisionTree => &[],
            Algorithm::NaiveBayes => &[("alpha", 1.0), ("variance_floor", 1e-9)],
            Algorithm::SvmLinear => &[("lambda", 1e-4), ("epochs", 20.0)],
            Algorithm::LogisticRegression => &[
                ("lambda", 1e-4),
                ("learning_rate", 0.1),
                ("epochs", 1000.0),
                ("tolerance", 1e-6),
            ],
            Algorithm::Lda => &[("epsilon_scale", 1e-6)],
            Algorithm::Knn => &[("k", 5.0)],
            Algorithm::Perceptron => &[("epochs", 1000.0)],
        };
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    /// 0.5 for probability-like scores, 0 for signed margins.
    pub fn decision_threshold(self) -> f64 {
        match self {
            Algorithm::RandomForest
            | Algorithm::DecisionTree
            | Algorithm::NaiveBayes
            | Algorithm::LogisticRegression
            | Algorithm::Knn => 0.5,
            Algorithm::SvmLinear | Algorithm::Lda | Algorithm::Perceptron => 0.0,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Algorithm {
    fn serialize<Se: serde::Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        serializer.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for Algorithm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let id = String::deserialize(deserializer)?;
        Algorithm::from_id(&id)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown algorithm `{id}`")))
    }
}

/// Fully resolved training request: algorithm, seed, and hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub params: BTreeMap<String, f64>,
}

impl ModelSpec {
    /// Fills defaults, then applies overrides. Unknown keys are rejected
    /// so typos surface instead of silently training with defaults.
    pub fn resolve(
        algorithm: Algorithm,
        seed: u64,
        overrides: &BTreeMap<String, f64>,
    ) -> Result<ModelSpec, ModelError> {
        let mut params = algorithm.default_params();
        for (key, value) in overrides {
            if !params.contains_key(key) {
                return Err(ModelError::Format {
                    reason: format!("unknown hyperparameter `{key}` for {algorithm}"),
                });
            }
            params.insert(key.clone(), *value);
        }
        Ok(ModelSpec { algorithm, seed, params })
    }

    pub fn with_defaults(algorithm: Algorithm, seed: u64) -> ModelSpec {
        ModelSpec { algorithm, seed, params: algorithm.default_params() }
    }

    pub(crate) fn param(&self, name: &str) -> f64 {
        *self
            .params
            .get(name)
            .unwrap_or_else(|| panic!("hyperparameter `{name}` missing after resolution"))
    }

    pub(crate) fn param_usize(&self, name: &str) -> usize {
        self.param(name) as usize
    }
}

/// Label plus a score on the model's own scale (probability or margin),
/// higher meaning more flaky.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionScore {
    pub label: Label,
    pub score: f64,
}

/// Class sizes of the training data plus any convergence notes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingSummary {
    pub examples: usize,
    pub flaky: usize,
    pub non_flaky: usize,
    pub notes: Vec<String>,
}

/// Algorithm-specific learned state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound = "")]
pub enum ModelParameters<S: Scalar> {
    Tree { tree: TreeModel<S> },
    Forest { trees: Vec<TreeModel<S>> },
    NaiveBayes { model: NaiveBayesModel<S> },
    Knn { k: usize, examples: Vec<KnnExample<S>> },
    Linear { model: LinearModel<S> },
}

/// A stored training point for KNN.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct KnnExample<S: Scalar> {
    pub values: Vec<S>,
    pub label: Label,
}

/// A trained classifier: spec, schema, parameters, and summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TrainedModel<S: Scalar> {
    pub spec: ModelSpec,
    pub schema: FeatureSchema,
    pub parameters: ModelParameters<S>,
    pub training_summary: TrainingSummary,
}

/// Errors from training, prediction, and model files.
#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("degenerate dataset: {reason}")]
    Degenerate { reason: String },
    #[error("schema violation: {reason}")]
    Schema { reason: String },
    #[error("model format version {found} is not supported (expected {expected})")]
    Version { found: u32, expected: u32 },
    #[error("malformed model data: {reason}")]
    Format { reason: String },
}

/// Trains one model. Requires both classes in the training data.
pub fn train<S: Scalar>(
    spec: &ModelSpec,
    dataset: &Dataset<S>,
) -> Result<TrainedModel<S>, ModelError> {
    let (flaky, non_flaky) = dataset.class_counts();
    if flaky == 0 || non_flaky == 0 {
        return Err(ModelError::Degenerate {
            reason: format!(
                "training needs both classes (flaky={flaky}, non-flaky={non_flaky})"
            ),
        });
    }
    dataset
        .validate()
        .map_err(|e| ModelError::Schema { reason: e.to_string() })?;

    let mut notes = Vec::new();
    let parameters = match spec.algorithm {
        Algorithm::DecisionTree => ModelParameters::Tree { tree: tree::train_tree(dataset) },
        Algorithm::RandomForest => {
            ModelParameters::Forest { trees: forest::train_forest(spec, dataset) }
        }
        Algorithm::NaiveBayes => {
            ModelParameters::NaiveBayes { model: naive_bayes::train_naive_bayes(spec, dataset) }
        }
        Algorithm::Knn => ModelParameters::Knn {
            k: spec.param_usize("k").max(1),
            examples: dataset
                .examples
                .iter()
                .map(|e| KnnExample { values: e.values.clone(), label: e.label })
                .collect(),
        },
        Algorithm::LogisticRegression => ModelParameters::Linear {
            model: linear::train_logistic_regression(spec, dataset, &mut notes),
        },
        Algorithm::Perceptron => ModelParameters::Linear {
            model: linear::train_perceptron(spec, dataset, &mut notes),
        },
        Algorithm::SvmLinear => {
            ModelParameters::Linear { model: linear::train_svm(spec, dataset) }
        }
        Algorithm::Lda => ModelParameters::Linear { model: linear::train_lda(spec, dataset)? },
    };

    Ok(TrainedModel {
        spec: spec.clone(),
        schema: dataset.schema.clone(),
        parameters,
        training_summary: TrainingSummary {
            examples: dataset.len(),
            flaky,
            non_flaky,
            notes,
        },
    })
}

impl<S: Scalar> TrainedModel<S> {
    pub fn decision_threshold(&self) -> f64 {
        self.spec.algorithm.decision_threshold()
    }

    /// Scores one feature vector. Pure; rejects wrong arity.
    pub fn predict(&self, values: &[S]) -> Result<PredictionScore, ModelError> {
        if values.len() != self.schema.len() {
            return Err(ModelError::Schema {
                reason: format!(
                    "input has {} values, model schema has {} features",
                    values.len(),
                    self.schema.len()
                ),
            });
        }
        let score = match &self.parameters {
            ModelParameters::Tree { tree } => tree.score(values),
            ModelParameters::Forest { trees } => forest::score(trees, values),
            ModelParameters::NaiveBayes { model } => model.score(values),
            ModelParameters::Knn { k, examples } => knn::score(*k, examples, values),
            ModelParameters::Linear { model } => model.score(values),
        };
        let label = if score > self.decision_threshold() {
            Label::Flaky
        } else {
            Label::NonFlaky
        };
        Ok(PredictionScore { label, score })
    }
}

/// On-disk model layout.
#[derive(Debug, Serialize, Deserialize)]
#[serde(bound = "")]
struct ModelFile<S: Scalar> {
    format_version: u32,
    spec: ModelSpec,
    schema: FeatureSchema,
    parameters: ModelParameters<S>,
    training_summary: TrainingSummary,
}

/// Serializes a model as pretty JSON with a trailing newline.
/// Deserializing and re-serializing reproduces the bytes exactly.
pub fn serialize_model<S: Scalar>(model: &TrainedModel<S>) -> Result<Vec<u8>, ModelError> {
    let file = ModelFile {
        format_version: MODEL_FORMAT_VERSION,
        spec: model.spec.clone(),
        schema: model.schema.clone(),
        parameters: model.parameters.clone(),
        training_summary: model.training_summary.clone(),
    };
    let mut bytes = serde_json::to_vec_pretty(&file)
        .map_err(|e| ModelError::Format { reason: e.to_string() })?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Parses a serialized model, rejecting unknown format versions.
pub fn deserialize_model<S: Scalar>(bytes: &[u8]) -> Result<TrainedModel<S>, ModelError> {
    // Peek at the version first so a newer file yields VersionError rather
    // than an opaque parse failure about its changed layout.
    #[derive(Deserialize)]
    struct VersionProbe {
        format_version: u32,
    }
    let probe: VersionProbe = serde_json::from_slice(bytes)
        .map_err(|e| ModelError::Format { reason: e.to_string() })?;
    if probe.format_version != MODEL_FORMAT_VERSION {
        return Err(ModelError::Version {
            found: probe.format_version,
            expected: MODEL_FORMAT_VERSION,
        });
    }
    let file: ModelFile<S> = serde_json::from_slice(bytes)
        .map_err(|e| ModelError::Format { reason: e.to_string() })?;
    Ok(TrainedModel {
        spec: file.spec,
        schema: file.schema,
        parameters: file.parameters,
        training_summary: file.training_summary,
    })
}
