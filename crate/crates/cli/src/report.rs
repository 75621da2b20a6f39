//! Rendering of metric, error, and lint reports as aligned text, TSV, or JSON.
//!
//! Percentages are rounded half-up to two decimals at this boundary only;
//! the reports themselves carry full precision. JSON keeps both: the raw
//! number and the rounded string.

use nererr_core::lint::LintFinding;
use nererr_core::{Direction, ErrorCounts, ErrorReport, MetricsReport};
use serde_json::{json, Map, Value};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Tsv,
    Json,
}

/// Round half-up to two decimals and print with a `.` decimal separator,
/// locale-independent.
pub fn fmt2(x: f64) -> String {
    let scaled = (x * 100.0 + 0.5).floor() as i64;
    format!("{}.{:02}", scaled / 100, scaled % 100)
}

/// Lay out rows with two-space gutters; every column is left-aligned.
fn align(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[i].saturating_sub(cell.chars().count());
            if i + 1 < row.len() {
                line.extend(std::iter::repeat(' ').take(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn tsv(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

pub fn render_metrics(report: &MetricsReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let row = |m: &nererr_core::TagMetrics| {
                json!({
                    "correct_ne": m.counts.correct_ne,
                    "gold_ne": m.counts.gold_ne,
                    "found_ne": m.counts.found_ne,
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "precision_str": fmt2(m.precision),
                    "recall_str": fmt2(m.recall),
                    "f1_str": fmt2(m.f1),
                })
            };
            let per_tag: Map<String, Value> = report
                .per_tag
                .iter()
                .map(|(tag, m)| (tag.clone(), row(m)))
                .collect();
            let value = json!({ "overall": row(&report.overall), "per_tag": per_tag });
            let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
            s.push('\n');
            s
        }
        _ => {
            let mut rows = vec![vec![
                "Tag name".to_string(),
                "Precision (%)".to_string(),
                "Recall (%)".to_string(),
                "F1 (%)".to_string(),
            ]];
            let mut push = |name: &str, m: &nererr_core::TagMetrics| {
                rows.push(vec![
                    name.to_string(),
                    fmt2(m.precision),
                    fmt2(m.recall),
                    fmt2(m.f1),
                ]);
            };
            push("All", &report.overall);
            for (tag, m) in &report.per_tag {
                push(tag, m);
            }
            match format {
                ReportFormat::Tsv => tsv(&rows),
                _ => align(&rows),
            }
        }
    }
}

fn direction_name(direction: Direction) -> &'static str {
    match direction {
        Direction::Gold => "gold",
        Direction::Pred => "pred",
    }
}

/// Row label for the no-counterpart error type, per direction.
fn missing_name(direction: Direction, header: bool) -> &'static str {
    match (direction, header) {
        (Direction::Gold, true) => "No Extraction",
        (Direction::Gold, false) => "No extraction",
        (Direction::Pred, true) => "No Annotation",
        (Direction::Pred, false) => "No annotation",
    }
}

fn summary_rows(report: &ErrorReport) -> Vec<(String, u64, f64)> {
    let t = &report.totals;
    let r = &report.rates;
    let missing = (missing_name(report.direction, false).to_string(), t.missing, r.missing);
    let mut rows = vec![
        ("Wrong tag".to_string(), t.wrong_tag, r.wrong_tag),
        ("Wrong range".to_string(), t.wrong_range, r.wrong_range),
        (
            "Wrong range and tag".to_string(),
            t.wrong_range_and_tag,
            r.wrong_range_and_tag,
        ),
    ];
    // the no-counterpart type leads the gold summary and trails the pred one
    match report.direction {
        Direction::Gold => rows.insert(0, missing),
        Direction::Pred => rows.push(missing),
    }
    rows
}

fn detail_row(tag: &str, c: &ErrorCounts) -> Vec<String> {
    vec![
        tag.to_string(),
        c.correct.to_string(),
        c.errors().to_string(),
        c.total().to_string(),
        c.missing.to_string(),
        c.wrong_tag.to_string(),
        c.wrong_range.to_string(),
        c.wrong_range_and_tag.to_string(),
    ]
}

fn render_error_report_text(report: &ErrorReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Error analysis based on {} labels",
        direction_name(report.direction)
    );
    out.push('\n');

    let mut rows = vec![vec![
        "Error type".to_string(),
        "Number (NE)".to_string(),
        "Rate (%)".to_string(),
    ]];
    let errors = report.total_errors();
    if errors > 0 {
        for (name, count, rate) in summary_rows(report) {
            rows.push(vec![name, count.to_string(), fmt2(rate)]);
        }
    }
    rows.push(vec![
        "All errors".to_string(),
        errors.to_string(),
        if errors > 0 { "100.00".to_string() } else { String::new() },
    ]);
    out.push_str(&align(&rows));
    out.push('\n');

    let mut rows = vec![vec![
        "Tags".to_string(),
        "Correct".to_string(),
        "Error".to_string(),
        "Total".to_string(),
        missing_name(report.direction, true).to_string(),
        "Wrong Tag".to_string(),
        "Wrong Range".to_string(),
        "Wrong Range & Tag".to_string(),
    ]];
    for (tag, counts) in &report.per_tag {
        rows.push(detail_row(tag, counts));
    }
    rows.push(detail_row("All Tags", &report.totals));
    out.push_str(&align(&rows));
    out
}

fn render_error_report_tsv(report: &ErrorReport) -> String {
    let direction = direction_name(report.direction);
    let mut rows = vec![vec![
        "direction".to_string(),
        "tag".to_string(),
        "correct".to_string(),
        "error".to_string(),
        "total".to_string(),
        "missing".to_string(),
        "wrong_tag".to_string(),
        "wrong_range".to_string(),
        "wrong_range_and_tag".to_string(),
        "rate_missing".to_string(),
        "rate_wrong_tag".to_string(),
        "rate_wrong_range".to_string(),
        "rate_wrong_range_and_tag".to_string(),
    ]];
    let mut push = |tag: &str, c: &ErrorCounts, rates: bool| {
        let mut row = vec![direction.to_string()];
        row.extend(detail_row(tag, c));
        if rates {
            let r = &report.rates;
            for value in [r.missing, r.wrong_tag, r.wrong_range, r.wrong_range_and_tag] {
                row.push(fmt2(value));
            }
        }
        rows.push(row);
    };
    for (tag, counts) in &report.per_tag {
        push(tag, counts, false);
    }
    push("All", &report.totals, true);
    tsv(&rows)
}

fn error_report_json(report: &ErrorReport) -> Value {
    let counts_json = |c: &ErrorCounts| {
        json!({
            "correct": c.correct,
            "wrong_tag": c.wrong_tag,
            "wrong_range": c.wrong_range,
            "wrong_range_and_tag": c.wrong_range_and_tag,
            "missing": c.missing,
        })
    };
    let per_tag: Map<String, Value> = report
        .per_tag
        .iter()
        .map(|(tag, c)| (tag.clone(), counts_json(c)))
        .collect();
    let r = &report.rates;
    json!({
        "direction": direction_name(report.direction),
        "per_tag": per_tag,
        "totals": counts_json(&report.totals),
        "rates": {
            "missing": r.missing,
            "wrong_tag": r.wrong_tag,
            "wrong_range": r.wrong_range,
            "wrong_range_and_tag": r.wrong_range_and_tag,
            "missing_str": fmt2(r.missing),
            "wrong_tag_str": fmt2(r.wrong_tag),
            "wrong_range_str": fmt2(r.wrong_range),
            "wrong_range_and_tag_str": fmt2(r.wrong_range_and_tag),
        },
    })
}

/// Render one or both directions' error reports.
pub fn render_errors(reports: &[&ErrorReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let values: Vec<Value> = reports.iter().map(|r| error_report_json(r)).collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(values)).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Tsv => reports
            .iter()
            .map(|r| render_error_report_tsv(r))
            .collect::<Vec<_>>()
            .join("\n"),
        ReportFormat::Text => reports
            .iter()
            .map(|r| render_error_report_text(r))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

pub fn render_lint(findings: &[LintFinding], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let values: Vec<Value> = findings
                .iter()
                .map(|f| {
                    let occurrences: Vec<Value> = f
                        .occurrences
                        .iter()
                        .map(|o| {
                            json!({
                                "split": o.split,
                                "sentence": o.sentence,
                                "start": o.start,
                                "end": o.end,
                                "tag": o.tag,
                            })
                        })
                        .collect();
                    json!({
                        "kind": f.kind.name(),
                        "surface": f.surface,
                        "occurrences": occurrences,
                        "note": f.note,
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(values)).expect("findings serialize");
            s.push('\n');
            s
        }
        ReportFormat::Tsv => {
            let mut rows = vec![vec![
                "kind".to_string(),
                "surface".to_string(),
                "split".to_string(),
                "sentence".to_string(),
                "start".to_string(),
                "end".to_string(),
                "tag".to_string(),
                "note".to_string(),
            ]];
            for f in findings {
                for o in &f.occurrences {
                    rows.push(vec![
                        f.kind.name().to_string(),
                        f.surface.clone(),
                        o.split.clone(),
                        o.sentence.to_string(),
                        o.start.to_string(),
                        o.end.to_string(),
                        o.tag.clone().unwrap_or_default(),
                        f.note.clone(),
                    ]);
                }
            }
            tsv(&rows)
        }
        ReportFormat::Text => {
            if findings.is_empty() {
                return "No findings.\n".to_string();
            }
            let mut out = String::new();
            for (i, f) in findings.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "{}: \"{}\"", f.kind.name(), f.surface);
                for o in &f.occurrences {
                    let tag = o.tag.as_deref().unwrap_or("-");
                    let _ = writeln!(
                        out,
                        "  {}  sentence {}  tokens {}..{}  {}",
                        o.split, o.sentence, o.start, o.end, tag
                    );
                }
                let _ = writeln!(out, "  note: {}", f.note);
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nererr_core::lint::{LintKind, Occurrence};
    use nererr_core::{compute_metrics, ErrorReport, TagCounts};
    use std::collections::BTreeMap;

    fn paper_gold_report() -> ErrorReport {
        let mut per_tag = BTreeMap::new();
        per_tag.insert(
            "ALL".to_string(),
            ErrorCounts {
                correct: 2566,
                missing: 142,
                wrong_tag: 112,
                wrong_range: 100,
                wrong_range_and_tag: 74,
            },
        );
        ErrorReport::from_counts(Direction::Gold, per_tag)
    }

    #[test]
    fn half_up_rounding() {
        assert_eq!(fmt2(33.177570093457945), "33.18");
        assert_eq!(fmt2(26.16822429906542), "26.17");
        assert_eq!(fmt2(23.364485981308412), "23.36");
        assert_eq!(fmt2(17.289719626168225), "17.29");
        assert_eq!(fmt2(0.0), "0.00");
        assert_eq!(fmt2(100.0), "100.00");
        assert_eq!(fmt2(85.70474281897127), "85.70");
    }

    #[test]
    fn gold_summary_reproduces_paper_rates() {
        let text = render_errors(&[&paper_gold_report()], ReportFormat::Text);
        for needle in [
            "No extraction        142          33.18",
            "Wrong tag            112          26.17",
            "Wrong range          100          23.36",
            "Wrong range and tag  74           17.29",
            "All errors           428          100.00",
        ] {
            assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
        }
        assert!(text.contains("No Extraction"));
    }

    #[test]
    fn pred_summary_uses_no_annotation() {
        let mut per_tag = BTreeMap::new();
        per_tag.insert(
            "ALL".to_string(),
            ErrorCounts {
                correct: 2566,
                missing: 89,
                wrong_tag: 113,
                wrong_range: 88,
                wrong_range_and_tag: 69,
            },
        );
        let report = ErrorReport::from_counts(Direction::Pred, per_tag);
        let text = render_errors(&[&report], ReportFormat::Text);
        assert!(text.contains("No annotation"));
        assert!(text.contains("No Annotation"));
        assert!(text.contains("31.48"));
        assert!(text.contains("24.51"));
        assert!(text.contains("19.22"));
        assert!(text.contains("24.79"));
        // pred summary trails with the no-annotation row
        let na = text.find("No annotation").unwrap();
        let wt = text.find("Wrong tag").unwrap();
        assert!(wt < na);
    }

    #[test]
    fn zero_errors_summary() {
        let mut per_tag = BTreeMap::new();
        per_tag.insert(
            "PER".to_string(),
            ErrorCounts {
                correct: 3,
                ..ErrorCounts::default()
            },
        );
        let report = ErrorReport::from_counts(Direction::Gold, per_tag);
        let text = render_errors(&[&report], ReportFormat::Text);
        assert!(text.contains("All errors  0"));
        assert!(!text.contains("Wrong tag  "));
    }

    #[test]
    fn metrics_text_layout() {
        let mut counts = BTreeMap::new();
        counts.insert(
            "LOC".to_string(),
            TagCounts {
                correct_ne: 2566,
                gold_ne: 2994,
                found_ne: 2926,
            },
        );
        let report = compute_metrics(&counts);
        let text = render_metrics(&report, ReportFormat::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("Tag name"));
        assert!(lines[1].starts_with("All"));
        // 100 * 2566 / 2994 displays as 85.70
        assert!(lines[1].contains("85.70"));
        assert!(lines[2].starts_with("LOC"));
    }

    #[test]
    fn metrics_tsv_reparses_to_same_values() {
        let mut counts = BTreeMap::new();
        counts.insert(
            "PER".to_string(),
            TagCounts {
                correct_ne: 7,
                gold_ne: 9,
                found_ne: 11,
            },
        );
        let report = compute_metrics(&counts);
        let out = render_metrics(&report, ReportFormat::Tsv);
        let mut lines = out.lines();
        let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
        assert_eq!(header[0], "Tag name");
        let all: Vec<&str> = lines.next().unwrap().split('\t').collect();
        assert_eq!(all[1], fmt2(report.overall.precision));
        assert_eq!(all[2], fmt2(report.overall.recall));
        assert_eq!(all[3], fmt2(report.overall.f1));
    }

    #[test]
    fn metrics_json_keeps_full_precision() {
        let mut counts = BTreeMap::new();
        counts.insert(
            "ALL".to_string(),
            TagCounts {
                correct_ne: 2566,
                gold_ne: 2994,
                found_ne: 2926,
            },
        );
        let report = compute_metrics(&counts);
        let out = render_metrics(&report, ReportFormat::Json);
        let value: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(
            value["overall"]["recall"].as_f64().unwrap(),
            report.overall.recall
        );
        assert_eq!(value["overall"]["recall_str"], "85.70");
        assert_eq!(value["per_tag"]["ALL"]["gold_ne"], 2994);
    }

    #[test]
    fn errors_json_schema_keys() {
        let out = render_errors(&[&paper_gold_report()], ReportFormat::Json);
        let value: Value = serde_json::from_str(&out).unwrap();
        let report = &value[0];
        assert_eq!(report["direction"], "gold");
        assert_eq!(report["totals"]["missing"], 142);
        assert_eq!(report["rates"]["missing_str"], "33.18");
        assert_eq!(report["per_tag"]["ALL"]["wrong_range"], 100);
    }

    #[test]
    fn lint_empty_renderings() {
        assert_eq!(render_lint(&[], ReportFormat::Text), "No findings.\n");
        let json = render_lint(&[], ReportFormat::Json);
        let value: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value, Value::Array(vec![]));
    }

    #[test]
    fn lint_text_block_names_splits() {
        let finding = LintFinding {
            kind: LintKind::UnlabeledElsewhere,
            surface: "Sở Y_tế".to_string(),
            occurrences: vec![
                Occurrence {
                    split: "train".to_string(),
                    sentence: 3,
                    start: 4,
                    end: 6,
                    tag: Some("ORG".to_string()),
                },
                Occurrence {
                    split: "test".to_string(),
                    sentence: 1,
                    start: 0,
                    end: 2,
                    tag: None,
                },
            ],
            note: "labeled in train, unlabeled in test".to_string(),
        };
        let text = render_lint(&[finding], ReportFormat::Text);
        assert!(text.contains("UnlabeledElsewhere"));
        assert!(text.contains("train"));
        assert!(text.contains("test"));
        assert!(text.contains("tokens 4..6"));
    }

}
