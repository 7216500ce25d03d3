//! Feature datasets: schema, labeled examples, balancing, and splits.
//!
//! A dataset row is one test method: 19 binary smell features in canonical
//! order, then `loc`, then `smells_count`, plus a flaky/non-flaky label.

mod csv_io;
mod ops;

pub use csv_io::{
    read_features_csv, read_labels_csv, write_features_csv, write_features_csv_with_skipped,
    write_labels_csv, LabelRecord,
};
pub use ops::{
    assemble_dataset, balance_dataset, build_feature_vector, partition_cross_project,
    split_train_test, AssembleDiagnostics, SplitOptions,
};

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::smells::SmellKind;
use crate::Scalar;

/// Identity of a single test method within a corpus.
///
/// Rendered as `Class#method`; the project name is carried separately so
/// cross-project partitions can group by it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TestId {
    pub project: String,
    pub class_name: String,
    pub method_name: String,
}

impl TestId {
    pub fn new(project: &str, class_name: &str, method_name: &str) -> Self {
        TestId {
            project: project.to_string(),
            class_name: class_name.to_string(),
            method_name: method_name.to_string(),
        }
    }

    /// `Class#method`, the form used in CSV columns and reports.
    pub fn qualified_name(&self) -> String {
        format!("{}#{}", self.class_name, self.method_name)
    }

    /// Parses `Class#method` back into its parts.
    pub fn from_qualified(project: &str, qualified: &str) -> Option<Self> {
        let (class_name, method_name) = qualified.split_once('#')?;
        if class_name.is_empty() || method_name.is_empty() {
            return None;
        }
        Some(TestId::new(project, class_name, method_name))
    }
}

impl fmt::Display for TestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.class_name, self.method_name)
    }
}

/// Binary classification target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Flaky,
    NonFlaky,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::Flaky, Label::NonFlaky];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Flaky => "flaky",
            Label::NonFlaky => "non-flaky",
        }
    }

    pub fn parse(text: &str) -> Option<Label> {
        match text {
            "flaky" => Some(Label::Flaky),
            "non-flaky" => Some(Label::NonFlaky),
            _ => None,
        }
    }

    pub fn is_flaky(self) -> bool {
        self == Label::Flaky
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Label {
    fn serialize<Se: serde::Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Label::parse(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown label `{text}`")))
    }
}

/// Whether a feature takes values in {0,1} or is a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureKind {
    Binary,
    Numeric,
}

/// Ordered feature list shared by datasets, models, and reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSchema {
    pub version: u32,
    pub names: Vec<String>,
    pub kinds: Vec<FeatureKind>,
}

/// Number of features in the version-1 schema: 19 smells + loc + smells_count.
pub const FEATURE_COUNT: usize = 21;

impl FeatureSchema {
    /// The fixed version-1 layout: 19 smells in canonical order, `loc`,
    /// `smells_count`.
    pub fn v1() -> Self {
        let mut names: Vec<String> = SmellKind::ALL.iter().map(|k| k.id().to_string()).collect();
        let mut kinds = vec![FeatureKind::Binary; SmellKind::ALL.len()];
        names.push("loc".to_string());
        kinds.push(FeatureKind::Numeric);
        names.push("smells_count".to_string());
        kinds.push(FeatureKind::Numeric);
        FeatureSchema { version: 1, names, kinds }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// One test with its feature vector and label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct LabeledExample<S: Scalar> {
    pub id: TestId,
    pub values: Vec<S>,
    pub label: Label,
}

/// Where a dataset came from and which seed shaped it (if any).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub seed: Option<u64>,
}

/// A schema-conforming collection of labeled examples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Dataset<S: Scalar> {
    pub schema: FeatureSchema,
    pub examples: Vec<LabeledExample<S>>,
    pub provenance: Provenance,
}

impl<S: Scalar> Dataset<S> {
    pub fn new(schema: FeatureSchema, source: &str) -> Self {
        Dataset {
            schema,
            examples: Vec::new(),
            provenance: Provenance { source: source.to_string(), seed: None },
        }
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    /// (flaky, non-flaky) counts.
    pub fn class_counts(&self) -> (usize, usize) {
        let flaky = self.examples.iter().filter(|e| e.label.is_flaky()).count();
        (flaky, self.examples.len() - flaky)
    }

    pub fn projects(&self) -> BTreeSet<&str> {
        self.examples.iter().map(|e| e.id.project.as_str()).collect()
    }

    /// Checks schema conformance, binary ranges, the smells_count identity,
    /// and test-id uniqueness.
    pub fn validate(&self) -> Result<(), DatasetError> {
        let mut seen = BTreeSet::new();
        for example in &self.examples {
            if example.values.len() != self.schema.len() {
                return Err(DatasetError::Schema {
                    reason: format!(
                        "example {} has {} values, schema has {} features",
                        example.id,
                        example.values.len(),
                        self.schema.len()
                    ),
                });
            }
            for (value, kind) in example.values.iter().zip(&self.schema.kinds) {
                if *kind == FeatureKind::Binary
                    && *value != S::zero()
                    && *value != S::one()
                {
                    return Err(DatasetError::Schema {
                        reason: format!("example {} has non-binary smell value", example.id),
                    });
                }
            }
            if !seen.insert((example.id.project.clone(), example.id.qualified_name())) {
                return Err(DatasetError::Format {
                    row: None,
                    reason: format!(
                        "duplicate test id {}/{}",
                        example.id.project,
                        example.id.qualified_name()
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Errors from dataset assembly, transformation, and I/O.
#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed data{}: {reason}", row.map(|r| format!(" at row {r}")).unwrap_or_default())]
    Format { row: Option<usize>, reason: String },
    #[error("schema violation: {reason}")]
    Schema { reason: String },
    #[error("degenerate dataset: {reason}")]
    Degenerate { reason: String },
}
