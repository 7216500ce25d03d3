//! Serialization of smell reports: one CSV/JSON record per test method.
//!
//! CSV layout: `project,test_id,<19 smell columns>,smells_count,loc,
//! skipped_rules` with booleans as 0/1 and skipped rule ids joined by
//! semicolons. JSON keeps the full report including findings; CSV is the
//! flat summary (findings are not representable there).

use std::io::{Read, Write};

use crate::features::TestId;

use super::{SmellKind, SmellReport, SmellSet};

/// Errors from report serialization.
#[derive(Debug, thiserror::Error)]
pub enum ReportIoError {
    #[error("csv error{}: {reason}", row.map(|r| format!(" at row {r}")).unwrap_or_default())]
    Format { row: Option<usize>, reason: String },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

fn format_error(row: usize, reason: impl Into<String>) -> ReportIoError {
    ReportIoError::Format { row: Some(row), reason: reason.into() }
}

fn csv_error(err: csv::Error) -> ReportIoError {
    ReportIoError::Format { row: err.position().map(|p| p.line() as usize), reason: err.to_string() }
}

/// Writes the flat CSV form of the reports.
pub fn write_reports_csv<W: Write>(
    writer: W,
    reports: &[SmellReport],
) -> Result<(), ReportIoError> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    let mut header = vec!["project".to_string(), "test_id".to_string()];
    header.extend(SmellKind::ALL.iter().map(|k| k.id().to_string()));
    header.push("smells_count".to_string());
    header.push("loc".to_string());
    header.push("skipped_rules".to_string());
    csv_writer.write_record(&header).map_err(csv_error)?;

    for report in reports {
        let mut row = vec![report.test_id.project.clone(), report.test_id.qualified_name()];
        for kind in SmellKind::ALL {
            row.push(if report.presence.contains(kind) { "1" } else { "0" }.to_string());
        }
        row.push(report.smells_count.to_string());
        row.push(report.loc.to_string());
        row.push(
            report
                .skipped_rules
                .iter()
                .map(|k| k.id())
                .collect::<Vec<_>>()
                .join(";"),
        );
        csv_writer.write_record(&row).map_err(csv_error)?;
    }
    csv_writer
        .flush()
        .map_err(|e| ReportIoError::Format { row: None, reason: e.to_string() })?;
    Ok(())
}

/// Reads the flat CSV form back. Findings are not stored in CSV, so the
/// returned reports carry empty finding lists.
pub fn read_reports_csv<R: Read>(reader: R) -> Result<Vec<SmellReport>, ReportIoError> {
    let mut csv_reader = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = csv_reader.headers().map_err(csv_error)?.clone();
    let mut expected = vec!["project".to_string(), "test_id".to_string()];
    expected.extend(SmellKind::ALL.iter().map(|k| k.id().to_string()));
    expected.extend(["smells_count".into(), "loc".into(), "skipped_rules".into()]);
    if headers.iter().collect::<Vec<_>>() != expected.iter().map(String::as_str).collect::<Vec<_>>()
    {
        return Err(format_error(1, "smell CSV header does not match the canonical layout"));
    }

    let smell_count = SmellKind::ALL.len();
    let mut reports = Vec::new();
    for (index, row) in csv_reader.records().enumerate() {
        let row = row.map_err(csv_error)?;
        let line = index + 2;
        if row.len() != expected.len() {
            return Err(format_error(
                line,
                format!("expected {} fields, found {}", expected.len(), row.len()),
            ));
        }
        let test_id = TestId::from_qualified(&row[0], &row[1]).ok_or_else(|| {
            format_error(line, format!("test_id `{}` is not `Class#method`", &row[1]))
        })?;
        let mut presence = SmellSet::new();
        for (offset, kind) in SmellKind::ALL.iter().enumerate() {
            match &row[2 + offset] {
                "0" => {}
                "1" => presence.insert(*kind),
                other => {
                    return Err(format_error(
                        line,
                        format!("column `{}` must be 0 or 1, found `{other}`", kind.id()),
                    ))
                }
            }
        }
        let smells_count: usize = row[2 + smell_count]
            .parse()
            .map_err(|_| format_error(line, "smells_count is not a count"))?;
        let loc: usize = row[3 + smell_count]
            .parse()
            .map_err(|_| format_error(line, "loc is not a count"))?;
        let skipped_cell = &row[4 + smell_count];
        let mut skipped_rules = Vec::new();
        if !skipped_cell.is_empty() {
            for id in skipped_cell.split(';') {
                let kind = SmellKind::from_id(id)
                    .ok_or_else(|| format_error(line, format!("unknown skipped rule `{id}`")))?;
                skipped_rules.push(kind);
            }
        }
        reports.push(SmellReport {
            test_id,
            presence,
            findings: Vec::new(),
            smells_count,
            skipped_rules,
            loc,
        });
    }
    Ok(reports)
}

/// Writes the full-fidelity JSON form (pretty-printed, trailing newline).
pub fn write_reports_json<W: Write>(
    mut writer: W,
    reports: &[SmellReport],
) -> Result<(), ReportIoError> {
    serde_json::to_writer_pretty(&mut writer, reports)?;
    writer
        .write_all(b"\n")
        .map_err(|e| ReportIoError::Format { row: None, reason: e.to_string() })?;
    Ok(())
}

/// Reads reports back from the JSON form.
pub fn read_reports_json<R: Read>(reader: R) -> Result<Vec<SmellReport>, ReportIoError> {
    Ok(serde_json::from_reader(reader)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smells::{FindingScope, SmellFinding};

    fn sample_reports() -> Vec<SmellReport> {
        let sleepy = TestId::new("oozie", "TestMemoryLocks", "testReadLock");
        let presence =
            SmellSet::from_kinds([SmellKind::SensitiveEquality, SmellKind::SleepyTest]);
        let with_findings = SmellReport {
            findings: vec![SmellFinding {
                kind: SmellKind::SleepyTest,
                test_id: sleepy.clone(),
                evidence_lines: vec![12, 14],
                scope: FindingScope::Method,
            }],
            smells_count: presence.count(),
            presence,
            test_id: sleepy,
            skipped_rules: vec![],
            loc: 17,
        };
        let skipped = SmellReport {
            test_id: TestId::new("orphan", "WidgetTest", "testAlone"),
            presence: SmellSet::new(),
            findings: vec![],
            smells_count: 0,
            skipped_rules: vec![SmellKind::EagerTest, SmellKind::LazyTest],
            loc: 5,
        };
        vec![with_findings, skipped]
    }

    #[test]
    fn csv_round_trips_flat_fields() {
        let reports = sample_reports();
        let mut buffer = Vec::new();
        write_reports_csv(&mut buffer, &reports).unwrap();
        let text = String::from_utf8(buffer.clone()).unwrap();
        assert!(text.starts_with("project,test_id,assertion_roulette,"));
        assert!(text.contains("eager_test;lazy_test"));
        assert!(!text.contains('\r'));

        let reread = read_reports_csv(buffer.as_slice()).unwrap();
        assert_eq!(reread.len(), 2);
        assert_eq!(reread[0].test_id, reports[0].test_id);
        assert_eq!(reread[0].presence, reports[0].presence);
        assert_eq!(reread[0].loc, 17);
        assert!(reread[0].findings.is_empty());
        assert_eq!(reread[1].skipped_rules, reports[1].skipped_rules);
    }

    #[test]
    fn json_round_trips_findings() {
        let reports = sample_reports();
        let mut buffer = Vec::new();
        write_reports_json(&mut buffer, &reports).unwrap();
        let reread = read_reports_json(buffer.as_slice()).unwrap();
        assert_eq!(reread, reports);
        let text = String::from_utf8(buffer).unwrap();
        assert!(text.contains("\"sleepy_test\": true"));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn csv_reader_rejects_malformed_rows() {
        let reports = sample_reports();
        let mut buffer = Vec::new();
        write_reports_csv(&mut buffer, &reports).unwrap();
        let text = String::from_utf8(buffer).unwrap();

        let bad_bool = text.replacen(",1,", ",yes,", 1);
        assert!(matches!(
            read_reports_csv(bad_bool.as_bytes()),
            Err(ReportIoError::Format { row: Some(2), .. })
        ));

        let bad_skip = text.replace("eager_test;lazy_test", "eager_test;unknown_rule");
        assert!(matches!(
            read_reports_csv(bad_skip.as_bytes()),
            Err(ReportIoError::Format { row: Some(3), .. })
        ));
    }
}
