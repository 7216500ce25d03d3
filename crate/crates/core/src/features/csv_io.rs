//! CSV formats: the labels file (`project,test_id,label`) and the feature
//! file (`project,test_id,<19 smells>,loc,smells_count,label`). Plain
//! UTF-8, LF line endings, booleans as 0/1.

use std::io::{Read, Write};

use crate::Scalar;

use super::{Dataset, DatasetError, FeatureSchema, Label, LabeledExample, TestId};

/// One row of the labels file; `test_id` is the qualified `Class#method`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelRecord {
    pub project: String,
    pub test_id: String,
    pub label: Label,
}

fn format_error(row: usize, reason: impl Into<String>) -> DatasetError {
    DatasetError::Format { row: Some(row), reason: reason.into() }
}

fn csv_error(err: csv::Error) -> DatasetError {
    let row = err.position().map(|p| p.line() as usize);
    DatasetError::Format { row, reason: err.to_string() }
}

/// Writes the labels file with its fixed header.
pub fn write_labels_csv<W: Write>(writer: W, records: &[LabelRecord]) -> Result<(), DatasetError> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer
        .write_record(["project", "test_id", "label"])
        .map_err(csv_error)?;
    for record in records {
        csv_writer
            .write_record([record.project.as_str(), record.test_id.as_str(), record.label.as_str()])
            .map_err(csv_error)?;
    }
    csv_writer.flush().map_err(|e| DatasetError::Format { row: None, reason: e.to_string() })?;
    Ok(())
}

/// Reads the labels file, reporting the offending row on malformed input.
pub fn read_labels_csv<R: Read>(reader: R) -> Result<Vec<LabelRecord>, DatasetError> {
    let mut csv_reader = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = csv_reader.headers().map_err(csv_error)?.clone();
    let expected = ["project", "test_id", "label"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(format_error(
            1,
            format!("labels header must be `project,test_id,label`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")),
        ));
    }

    let mut records = Vec::new();
    for (index, row) in csv_reader.records().enumerate() {
        let row = row.map_err(csv_error)?;
        let line = index + 2;
        if row.len() != 3 {
            return Err(format_error(line, format!("expected 3 fields, found {}", row.len())));
        }
        let label = Label::parse(&row[2])
            .ok_or_else(|| format_error(line, format!("unknown label `{}`", &row[2])))?;
        if row[0].is_empty() || row[1].is_empty() {
            return Err(format_error(line, "empty project or test_id"));
        }
        records.push(LabelRecord {
            project: row[0].to_string(),
            test_id: row[1].to_string(),
            label,
        });
    }
    Ok(records)
}

/// Writes the feature CSV. Binary features print as 0/1; numeric features
/// print with their shortest exact representation.
pub fn write_features_csv<S: Scalar, W: Write>(
    writer: W,
    dataset: &Dataset<S>,
) -> Result<(), DatasetError> {
    write_features_rows(writer, dataset, None)
}

/// Writes the feature CSV with a trailing `skipped` flag column marking
/// tests (keyed by `(project, Class#method)`) for which some detection
/// rule was skipped. Readers ignore the extra column.
pub fn write_features_csv_with_skipped<S: Scalar, W: Write>(
    writer: W,
    dataset: &Dataset<S>,
    skipped: &std::collections::BTreeSet<(String, String)>,
) -> Result<(), DatasetError> {
    write_features_rows(writer, dataset, Some(skipped))
}

fn write_features_rows<S: Scalar, W: Write>(
    writer: W,
    dataset: &Dataset<S>,
    skipped: Option<&std::collections::BTreeSet<(String, String)>>,
) -> Result<(), DatasetError> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    let mut header = vec!["project".to_string(), "test_id".to_string()];
    header.extend(dataset.schema.names.iter().cloned());
    header.push("label".to_string());
    if skipped.is_some() {
        header.push("skipped".to_string());
    }
    csv_writer.write_record(&header).map_err(csv_error)?;

    for example in &dataset.examples {
        let mut row = vec![example.id.project.clone(), example.id.qualified_name()];
        for (value, kind) in example.values.iter().zip(&dataset.schema.kinds) {
            row.push(match kind {
                super::FeatureKind::Binary => {
                    if *value == S::one() { "1".to_string() } else { "0".to_string() }
                }
                super::FeatureKind::Numeric => format!("{value}"),
            });
        }
        row.push(example.label.as_str().to_string());
        if let Some(set) = skipped {
            let key = (example.id.project.clone(), example.id.qualified_name());
            row.push(if set.contains(&key) { "1".to_string() } else { "0".to_string() });
        }
        csv_writer.write_record(&row).map_err(csv_error)?;
    }
    csv_writer.flush().map_err(|e| DatasetError::Format { row: None, reason: e.to_string() })?;
    Ok(())
}

/// Reads a feature CSV produced by [`write_features_csv`]. The header must
/// match the version-1 schema; a trailing `skipped` column (emitted by
/// keep-skipped extractions) is tolerated and ignored.
pub fn read_features_csv<S: Scalar, R: Read>(
    reader: R,
    source: &str,
) -> Result<Dataset<S>, DatasetError> {
    let schema = FeatureSchema::v1();
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let headers = csv_reader.headers().map_err(csv_error)?.clone();
    let header_fields: Vec<&str> = headers.iter().collect();

    let mut expected: Vec<String> = vec!["project".into(), "test_id".into()];
    expected.extend(schema.names.iter().cloned());
    expected.push("label".into());
    let has_skipped_column = header_fields.len() == expected.len() + 1
        && header_fields[..expected.len()] == expected[..]
        && header_fields[expected.len()] == "skipped";
    if header_fields[..] != expected[..] && !has_skipped_column {
        return Err(format_error(1, "feature CSV header does not match the v1 schema"));
    }
    let value_count = schema.len();

    let mut dataset = Dataset::new(schema, source);
    for (index, row) in csv_reader.records().enumerate() {
        let row = row.map_err(csv_error)?;
        let line = index + 2;
        let expected_fields = expected.len() + usize::from(has_skipped_column);
        if row.len() != expected_fields {
            return Err(format_error(
                line,
                format!("expected {expected_fields} fields, found {}", row.len()),
            ));
        }
        let id = TestId::from_qualified(&row[0], &row[1]).ok_or_else(|| {
            format_error(line, format!("test_id `{}` is not `Class#method`", &row[1]))
        })?;
        let mut values = Vec::with_capacity(value_count);
        for field_index in 0..value_count {
            let cell = &row[2 + field_index];
            let kind = dataset.schema.kinds[field_index];
            let value = match kind {
                super::FeatureKind::Binary => match cell {
                    "0" => S::zero(),
                    "1" => S::one(),
                    other => {
                        return Err(format_error(
                            line,
                            format!(
                                "feature `{}` must be 0 or 1, found `{other}`",
                                dataset.schema.names[field_index]
                            ),
                        ))
                    }
                },
                super::FeatureKind::Numeric => {
                    let parsed: f64 = cell.parse().map_err(|_| {
                        format_error(
                            line,
                            format!(
                                "feature `{}` is not numeric: `{cell}`",
                                dataset.schema.names[field_index]
                            ),
                        )
                    })?;
                    S::from_f64_lossy(parsed)
                }
            };
            values.push(value);
        }
        let label_cell = &row[2 + value_count];
        let label = Label::parse(label_cell)
            .ok_or_else(|| format_error(line, format!("unknown label `{label_cell}`")))?;
        dataset.examples.push(LabeledExample { id, values, label });
    }

    dataset.validate().map_err(|e| match e {
        DatasetError::Format { reason, .. } => DatasetError::Format { row: None, reason },
        other => other,
    })?;
    Ok(dataset)
}
