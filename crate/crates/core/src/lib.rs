//! smellsift-core: static analysis of Java test sources for test smells,
//! feature extraction, and from-scratch classifiers for flaky-test prediction.
//!
//! The crate is organized as a pipeline:
//!
//! 1. [`facts`] parses Java test files into immutable fact tables
//!    (classes, methods, call sites, literals, annotations).
//! 2. [`smells`] evaluates 19 detection rules against those facts and
//!    emits per-test-method smell reports.
//! 3. [`features`] joins smell reports with flakiness labels into
//!    21-feature datasets, with balancing, train/test splitting, and
//!    intra-/inter-project partitioning.
//! 4. [`learners`] trains one of eight classifiers on a dataset with a
//!    uniform train/predict/score contract and deterministic seeding.
//! 5. [`eval`] computes precision/recall/F1/MCC/AUC, per-feature
//!    information gain, and renders report tables.
//!
//! Numeric code (datasets, learners, evaluation) is generic over a
//! floating-point [`Scalar`] so the same pipeline runs in `f32` or `f64`;
//! the aliases below pin the common concrete choices.

pub mod eval;
pub mod facts;
pub mod features;
pub mod learners;
mod scalar;
pub mod smells;

pub use scalar::Scalar;

/// `f64` dataset, the default for the CLI pipeline.
pub type Dataset64 = features::Dataset<f64>;
/// `f32` dataset for memory-constrained runs.
pub type Dataset32 = features::Dataset<f32>;
/// `f64` labeled example.
pub type LabeledExample64 = features::LabeledExample<f64>;
/// `f32` labeled example.
pub type LabeledExample32 = features::LabeledExample<f32>;
/// `f64` trained model, the on-disk default.
pub type TrainedModel64 = learners::TrainedModel<f64>;
/// `f32` trained model.
pub type TrainedModel32 = learners::TrainedModel<f32>;
