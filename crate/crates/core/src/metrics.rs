//! Precision, recall, and F1 from exact span matches.
//!
//! Recall = correctNE x 100 / goldNE, Precision = correctNE x 100 / foundNE,
//! F1 = 2PR / (P + R). A zero denominator yields 0 rather than NaN so that
//! tags absent on one side still produce a row.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;

use crate::corpus::{check_alignment, Alignment, Corpus};
use crate::span::EntitySpan;
use crate::taxonomy::{spans_by_sentence, AlignmentError};

/// Raw match counts for one tag.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TagCounts {
    /// Spans with identical (sentence, start, end, tag) on both sides.
    pub correct_ne: u64,
    /// Gold spans of this tag.
    pub gold_ne: u64,
    /// Predicted spans of this tag, correct or not.
    pub found_ne: u64,
}

impl TagCounts {
    fn add(&mut self, other: &TagCounts) {
        self.correct_ne += other.correct_ne;
        self.gold_ne += other.gold_ne;
        self.found_ne += other.found_ne;
    }
}

/// Counts plus the derived percentages, kept at full precision; rounding
/// happens only at rendering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TagMetrics {
    pub counts: TagCounts,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl TagMetrics {
    fn from_counts(counts: TagCounts) -> Self {
        let precision = if counts.found_ne == 0 {
            0.0
        } else {
            counts.correct_ne as f64 * 100.0 / counts.found_ne as f64
        };
        let recall = if counts.gold_ne == 0 {
            0.0
        } else {
            counts.correct_ne as f64 * 100.0 / counts.gold_ne as f64
        };
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        TagMetrics {
            counts,
            precision,
            recall,
            f1,
        }
    }
}

impl fmt::Display for TagMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={:.2} R={:.2} F1={:.2}", self.precision, self.recall, self.f1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub per_tag: BTreeMap<String, TagMetrics>,
    /// Micro average: computed from counts summed over all tags.
    pub overall: TagMetrics,
}

/// Count exact matches and per-tag span totals. Tags appearing on only one
/// side get a row with the other side's count at 0.
pub fn count_matches(
    gold_spans: &[EntitySpan],
    pred_spans: &[EntitySpan],
) -> BTreeMap<String, TagCounts> {
    let pred_set: BTreeSet<&EntitySpan> = pred_spans.iter().collect();
    let mut counts: BTreeMap<String, TagCounts> = BTreeMap::new();
    for g in gold_spans {
        let slot = counts.entry(g.tag.clone()).or_default();
        slot.gold_ne += 1;
        if pred_set.contains(g) {
            slot.correct_ne += 1;
        }
    }
    for p in pred_spans {
        counts.entry(p.tag.clone()).or_default().found_ne += 1;
    }
    counts
}

/// Derive per-tag and micro-averaged metrics from match counts.
pub fn compute_metrics(counts: &BTreeMap<String, TagCounts>) -> MetricsReport {
    let mut total = TagCounts::default();
    let mut per_tag = BTreeMap::new();
    for (tag, c) in counts {
        total.add(c);
        per_tag.insert(tag.clone(), TagMetrics::from_counts(*c));
    }
    MetricsReport {
        per_tag,
        overall: TagMetrics::from_counts(total),
    }
}

/// Convenience wrapper: align, extract spans from both corpora, count, score.
pub fn evaluate(gold: &Corpus, pred: &Corpus) -> Result<MetricsReport, AlignmentError> {
    if let Alignment::Misaligned(m) = check_alignment(gold, pred) {
        return Err(AlignmentError(m));
    }
    let gold_spans: alloc::vec::Vec<EntitySpan> =
        spans_by_sentence(gold).into_iter().flatten().collect();
    let pred_spans: alloc::vec::Vec<EntitySpan> =
        spans_by_sentence(pred).into_iter().flatten().collect();
    Ok(compute_metrics(&count_matches(&gold_spans, &pred_spans)))
}
