//! Plain-text renderers for the report tables: per-algorithm metrics,
//! feature ranking, smell-count distribution, and cross-project recall.

use super::{DistributionRow, EvalReport, FeatureGain};

/// Renders rows as an aligned table; `right_aligned[i]` selects per-column
/// alignment.
fn render_aligned(header: &[&str], rows: &[Vec<String>], right_aligned: &[bool]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render_row = |cells: &[String], out: &mut String| {
        let mut parts = Vec::with_capacity(cells.len());
        for (i, cell) in cells.iter().enumerate() {
            if right_aligned[i] {
                parts.push(format!("{cell:>width$}", width = widths[i]));
            } else {
                parts.push(format!("{cell:<width$}", width = widths[i]));
            }
        }
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    let header_cells: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    render_row(&header_cells, &mut out);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("  "));
    out.push('\n');
    for row in rows {
        render_row(row, &mut out);
    }
    out
}

fn fmt2(value: f64) -> String {
    format!("{value:.2}")
}

/// Per-algorithm metric table; the best value in each metric column is
/// marked with `*` (ties all marked). Undefined AUC renders as `n/a`.
pub fn render_metrics_table(rows: &[(String, EvalReport)]) -> String {
    let metric = |r: &EvalReport, i: usize| -> Option<f64> {
        match i {
            0 => Some(r.precision),
            1 => Some(r.recall),
            2 => Some(r.f1),
            3 => Some(r.mcc),
            _ => r.auc,
        }
    };
    let mut best = [f64::NEG_INFINITY; 5];
    for (_, report) in rows {
        for (i, slot) in best.iter_mut().enumerate() {
            if let Some(v) = metric(report, i) {
                *slot = slot.max(v);
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(name, report)| {
            let mut row = vec![name.clone()];
            for i in 0..5 {
                match metric(report, i) {
                    Some(v) => {
                        let mark = if rows.len() > 1 && v == best[i] { "*" } else { "" };
                        row.push(format!("{}{mark}", fmt2(v)));
                    }
                    None => row.push("n/a".to_string()),
                }
            }
            row
        })
        .collect();
    render_aligned(
        &["Algorithm", "Precision", "Recall", "F1", "MCC", "AUC"],
        &cells,
        &[false, true, true, true, true, true],
    )
}

/// Feature ranking by information gain with affected counts and
/// row-relative percentages.
pub fn render_gain_table(gains: &[FeatureGain]) -> String {
    let cells: Vec<Vec<String>> = gains
        .iter()
        .enumerate()
        .map(|(i, g)| {
            vec![
                format!("{}", i + 1),
                g.feature.clone(),
                format!("{:.4}", g.information_gain),
                format!("{}", g.affected_total),
                format!("{}", g.affected_flaky),
                format!("{:.1}%", g.percent_flaky * 100.0),
                format!("{}", g.affected_non_flaky),
                format!("{:.1}%", g.percent_non_flaky * 100.0),
            ]
        })
        .collect();
    render_aligned(
        &["Pos.", "Feature", "Info. gain", "Total", "Flaky", "%", "Non-flaky", "%"],
        &cells,
        &[true, false, true, true, true, true, true, true],
    )
}

/// Smell-count distribution with row-relative percentages.
pub fn render_distribution_table(rows: &[DistributionRow]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                format!("{}", r.smells_count),
                format!("{}", r.non_flaky),
                format!("{:.0}%", r.non_flaky_percent * 100.0),
                format!("{}", r.flaky),
                format!("{:.0}%", r.flaky_percent * 100.0),
            ]
        })
        .collect();
    render_aligned(
        &["Smells", "Non-flaky", "%", "Flaky", "%"],
        &cells,
        &[true, true, true, true, true],
    )
}

/// Cross-project recall table: one section per context, each listing
/// recall, true positives, and false negatives per algorithm.
pub fn render_recall_table(sections: &[(String, Vec<(String, EvalReport)>)]) -> String {
    let mut out = String::new();
    for (i, (context, rows)) in sections.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(context);
        out.push('\n');
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|(name, report)| {
                vec![
                    name.clone(),
                    fmt2(report.recall),
                    format!("{}", report.matrix.true_positives),
                    format!("{}", report.matrix.false_negatives),
                ]
            })
            .collect();
        out.push_str(&render_aligned(
            &["Algorithm", "Recall", "TP", "FN"],
            &cells,
            &[false, true, true, true],
        ));
    }
    out
}
