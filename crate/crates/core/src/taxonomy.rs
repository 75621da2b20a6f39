//! Five-type error classification of spans, from both the gold and the
//! prediction perspectives, and its aggregation into per-tag reports.
//!
//! Each span is classified by a cascade: an exact-range counterpart decides
//! Correct vs Wrong tag; otherwise an overlapping counterpart decides Wrong
//! range (same tag) vs Wrong range and tag; no overlap at all means the span
//! was missed entirely (No extraction on the gold side, No annotation on the
//! predicted side).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::corpus::{check_alignment, Alignment, Corpus, Mismatch};
use crate::span::EntitySpan;

/// Which side's spans a report classifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Direction {
    Gold,
    Pred,
}

/// Outcome of classifying one gold span against the predicted span set.
/// The payload is the predicted span that determined the outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldOutcome {
    Correct(EntitySpan),
    WrongTag(EntitySpan),
    WrongRange(EntitySpan),
    WrongRangeAndTag(EntitySpan),
    NoExtraction,
}

/// Outcome of classifying one predicted span against the gold span set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredOutcome {
    Correct(EntitySpan),
    WrongTag(EntitySpan),
    WrongRange(EntitySpan),
    WrongRangeAndTag(EntitySpan),
    NoAnnotation,
}

enum RawOutcome {
    Correct(EntitySpan),
    WrongTag(EntitySpan),
    WrongRange(EntitySpan),
    WrongRangeAndTag(EntitySpan),
    Missing,
}

/// Largest token overlap wins; ties go to the smallest start.
fn best_overlap<'a>(subject: &EntitySpan, candidates: &[&'a EntitySpan]) -> &'a EntitySpan {
    let mut best = candidates[0];
    let mut best_len = subject.overlap_len(best);
    for &c in &candidates[1..] {
        let len = subject.overlap_len(c);
        if len > best_len || (len == best_len && c.start < best.start) {
            best = c;
            best_len = len;
        }
    }
    best
}

fn classify(subject: &EntitySpan, others: &[EntitySpan]) -> RawOutcome {
    if let Some(exact) = others.iter().find(|o| subject.same_range(o)) {
        return if exact.tag == subject.tag {
            RawOutcome::Correct(exact.clone())
        } else {
            RawOutcome::WrongTag(exact.clone())
        };
    }
    let overlapping: Vec<&EntitySpan> = others.iter().filter(|o| subject.overlaps(o)).collect();
    if overlapping.is_empty() {
        return RawOutcome::Missing;
    }
    let same_tag: Vec<&EntitySpan> = overlapping
        .iter()
        .copied()
        .filter(|o| o.tag == subject.tag)
        .collect();
    if !same_tag.is_empty() {
        RawOutcome::WrongRange(best_overlap(subject, &same_tag).clone())
    } else {
        RawOutcome::WrongRangeAndTag(best_overlap(subject, &overlapping).clone())
    }
}

/// Classify one gold span against the predicted spans.
pub fn classify_gold_span(gold: &EntitySpan, predicted: &[EntitySpan]) -> GoldOutcome {
    match classify(gold, predicted) {
        RawOutcome::Correct(s) => GoldOutcome::Correct(s),
        RawOutcome::WrongTag(s) => GoldOutcome::WrongTag(s),
        RawOutcome::WrongRange(s) => GoldOutcome::WrongRange(s),
        RawOutcome::WrongRangeAndTag(s) => GoldOutcome::WrongRangeAndTag(s),
        RawOutcome::Missing => GoldOutcome::NoExtraction,
    }
}

/// Classify one predicted span against the gold spans (the mirror cascade).
pub fn classify_pred_span(pred: &EntitySpan, gold: &[EntitySpan]) -> PredOutcome {
    match classify(pred, gold) {
        RawOutcome::Correct(s) => PredOutcome::Correct(s),
        RawOutcome::WrongTag(s) => PredOutcome::WrongTag(s),
        RawOutcome::WrongRange(s) => PredOutcome::WrongRange(s),
        RawOutcome::WrongRangeAndTag(s) => PredOutcome::WrongRangeAndTag(s),
        RawOutcome::Missing => PredOutcome::NoAnnotation,
    }
}

/// Outcome counts for one tag. `missing` is No extraction in a gold-based
/// report and No annotation in a prediction-based one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ErrorCounts {
    pub correct: u64,
    pub wrong_tag: u64,
    pub wrong_range: u64,
    pub wrong_range_and_tag: u64,
    pub missing: u64,
}

impl ErrorCounts {
    pub fn errors(&self) -> u64 {
        self.wrong_tag + self.wrong_range + self.wrong_range_and_tag + self.missing
    }

    pub fn total(&self) -> u64 {
        self.correct + self.errors()
    }

    fn add(&mut self, other: &ErrorCounts) {
        self.correct += other.correct;
        self.wrong_tag += other.wrong_tag;
        self.wrong_range += other.wrong_range;
        self.wrong_range_and_tag += other.wrong_range_and_tag;
        self.missing += other.missing;
    }
}

/// Per-error-type share of all errors, in percent at full precision.
/// All zero when there are no errors.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ErrorRates {
    pub missing: f64,
    pub wrong_tag: f64,
    pub wrong_range: f64,
    pub wrong_range_and_tag: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub direction: Direction,
    pub per_tag: BTreeMap<String, ErrorCounts>,
    pub totals: ErrorCounts,
    pub rates: ErrorRates,
}

impl ErrorReport {
    /// Build a report from per-tag counts, deriving totals and rates.
    pub fn from_counts(direction: Direction, per_tag: BTreeMap<String, ErrorCounts>) -> Self {
        let mut totals = ErrorCounts::default();
        for counts in per_tag.values() {
            totals.add(counts);
        }
        let errors = totals.errors();
        let rate = |n: u64| {
            if errors == 0 {
                0.0
            } else {
                n as f64 * 100.0 / errors as f64
            }
        };
        let rates = ErrorRates {
            missing: rate(totals.missing),
            wrong_tag: rate(totals.wrong_tag),
            wrong_range: rate(totals.wrong_range),
            wrong_range_and_tag: rate(totals.wrong_range_and_tag),
        };
        ErrorReport {
            direction,
            per_tag,
            totals,
            rates,
        }
    }

    pub fn total_errors(&self) -> u64 {
        self.totals.errors()
    }
}

/// The corpora disagree in tokenization, so spans cannot be compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentError(pub Mismatch);

impl fmt::Display for AlignmentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "corpora are misaligned: {}", self.0)
    }
}

/// Group a corpus' spans by sentence; the outer vec is indexed by sentence.
pub(crate) fn spans_by_sentence(corpus: &Corpus) -> Vec<Vec<EntitySpan>> {
    (0..corpus.sentences.len())
        .map(|i| corpus.sentence_spans(i))
        .collect()
}

/// Classify every span of both corpora and aggregate into the two reports
/// (gold-based first). Tags seen on either side get a row in both reports.
pub fn analyze(gold: &Corpus, pred: &Corpus) -> Result<(ErrorReport, ErrorReport), AlignmentError> {
    if let Alignment::Misaligned(m) = check_alignment(gold, pred) {
        return Err(AlignmentError(m));
    }
    let gold_spans = spans_by_sentence(gold);
    let pred_spans = spans_by_sentence(pred);

    let mut gold_counts: BTreeMap<String, ErrorCounts> = BTreeMap::new();
    let mut pred_counts: BTreeMap<String, ErrorCounts> = BTreeMap::new();
    for (gs, ps) in gold_spans.iter().zip(&pred_spans) {
        for g in gs {
            let slot = gold_counts.entry(g.tag.clone()).or_default();
            match classify_gold_span(g, ps) {
                GoldOutcome::Correct(_) => slot.correct += 1,
                GoldOutcome::WrongTag(_) => slot.wrong_tag += 1,
                GoldOutcome::WrongRange(_) => slot.wrong_range += 1,
                GoldOutcome::WrongRangeAndTag(_) => slot.wrong_range_and_tag += 1,
                GoldOutcome::NoExtraction => slot.missing += 1,
            }
        }
        for p in ps {
            let slot = pred_counts.entry(p.tag.clone()).or_default();
            match classify_pred_span(p, gs) {
                PredOutcome::Correct(_) => slot.correct += 1,
                PredOutcome::WrongTag(_) => slot.wrong_tag += 1,
                PredOutcome::WrongRange(_) => slot.wrong_range += 1,
                PredOutcome::WrongRangeAndTag(_) => slot.wrong_range_and_tag += 1,
                PredOutcome::NoAnnotation => slot.missing += 1,
            }
        }
    }
    // every tag seen on either side appears in both reports
    for tag in gold_counts.keys().cloned().collect::<Vec<_>>() {
        pred_counts.entry(tag).or_default();
    }
    for tag in pred_counts.keys().cloned().collect::<Vec<_>>() {
        gold_counts.entry(tag).or_default();
    }
    Ok((
        ErrorReport::from_counts(Direction::Gold, gold_counts),
        ErrorReport::from_counts(Direction::Pred, pred_counts),
    ))
}
