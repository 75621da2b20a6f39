//! Span-level evaluation of named-entity predictions against gold annotations.
//!
//! The crate is `no_std` (with `alloc`) and holds the pure algorithmic pieces:
//! label-sequence handling, entity span extraction, the five-type error
//! taxonomy, precision/recall/F1 counting, and cross-split consistency lints.
//! File parsing, rendering, and the CLI live in the companion `nererr` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod corpus;
pub mod lint;
pub mod metrics;
pub mod span;
pub mod taxonomy;

pub use corpus::{check_alignment, Alignment, Corpus, Mismatch, RepairPolicy, Sentence, TagScheme, Token};
pub use metrics::{compute_metrics, count_matches, evaluate, MetricsReport, TagCounts, TagMetrics};
pub use span::{extract_spans, spans_to_labels, EntitySpan, InvalidTransition, SpanEncodeError};
pub use taxonomy::{
    analyze, classify_gold_span, classify_pred_span, AlignmentError, Direction, ErrorCounts,
    ErrorRates, ErrorReport, GoldOutcome, PredOutcome,
};
