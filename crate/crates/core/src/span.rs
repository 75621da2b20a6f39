//! Conversion between per-token label sequences and entity spans.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::corpus::{RepairPolicy, TagScheme};

/// A contiguous token range within one sentence carrying a single entity tag.
///
/// `start` is inclusive, `end` exclusive; `tag` carries no scheme prefix
/// (`"PER"`, not `"B-PER"`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntitySpan {
    pub sentence: usize,
    pub start: usize,
    pub end: usize,
    pub tag: String,
}

impl EntitySpan {
    pub fn new(sentence: usize, start: usize, end: usize, tag: impl Into<String>) -> Self {
        EntitySpan {
            sentence,
            start,
            end,
            tag: tag.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    /// Non-empty token-index intersection within the same sentence.
    /// Touching spans do not overlap; spans in different sentences never do.
    pub fn overlaps(&self, other: &EntitySpan) -> bool {
        self.sentence == other.sentence && self.start < other.end && other.start < self.end
    }

    /// Identical (sentence, start, end), tag ignored.
    pub fn same_range(&self, other: &EntitySpan) -> bool {
        self.sentence == other.sentence && self.start == other.start && self.end == other.end
    }

    /// Number of tokens shared with `other` (0 when disjoint).
    pub fn overlap_len(&self, other: &EntitySpan) -> usize {
        if !self.overlaps(other) {
            return 0;
        }
        core::cmp::min(self.end, other.end) - core::cmp::max(self.start, other.start)
    }
}

/// An `I-X` (or bare tag under IOB2) with no legal predecessor, rejected
/// under [`RepairPolicy::Strict`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidTransition {
    pub sentence: usize,
    pub position: usize,
    pub label: String,
}

impl fmt::Display for InvalidTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sentence {}, token {}: label {:?} has no legal predecessor",
            self.sentence, self.position, self.label
        )
    }
}

/// Why a span list cannot be encoded back into labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanEncodeError {
    Overlap(EntitySpan, EntitySpan),
    OutOfBounds(EntitySpan),
    /// Adjacent same-tag spans cannot be told apart in the IO scheme.
    AdjacentSameTag(EntitySpan, EntitySpan),
}

impl fmt::Display for SpanEncodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanEncodeError::Overlap(a, b) => {
                write!(f, "spans {}..{} and {}..{} overlap", a.start, a.end, b.start, b.end)
            }
            SpanEncodeError::OutOfBounds(s) => {
                write!(f, "span {}..{} exceeds sentence length", s.start, s.end)
            }
            SpanEncodeError::AdjacentSameTag(a, b) => write!(
                f,
                "adjacent {}-{} spans {}..{} and {}..{} are not representable in the IO scheme",
                a.tag, b.tag, a.start, a.end, b.start, b.end
            ),
        }
    }
}

enum LabelKind<'a> {
    Outside,
    Begin(&'a str),
    Inside(&'a str),
    Bare(&'a str),
}

fn split_label(label: &str) -> LabelKind<'_> {
    if label == "O" {
        LabelKind::Outside
    } else if let Some(tag) = label.strip_prefix("B-") {
        if tag.is_empty() {
            LabelKind::Bare(label)
        } else {
            LabelKind::Begin(tag)
        }
    } else if let Some(tag) = label.strip_prefix("I-") {
        if tag.is_empty() {
            LabelKind::Bare(label)
        } else {
            LabelKind::Inside(tag)
        }
    } else {
        LabelKind::Bare(label)
    }
}

/// Turn one sentence's label sequence into entity spans.
///
/// Under IOB2 every maximal `B-X (I-X)*` run becomes one span; under IO every
/// maximal run of identical non-`O` tags becomes one span. `scheme` must be
/// resolved (not `Auto`).
pub fn extract_spans(
    labels: &[&str],
    scheme: TagScheme,
    policy: RepairPolicy,
    sentence: usize,
) -> Result<Vec<EntitySpan>, InvalidTransition> {
    let scheme = scheme.resolve(labels.iter().copied());
    let mut spans: Vec<EntitySpan> = Vec::new();
    let mut open: Option<(usize, &str)> = None;

    let close = |open: &mut Option<(usize, &str)>, end: usize, spans: &mut Vec<EntitySpan>| {
        if let Some((start, tag)) = open.take() {
            spans.push(EntitySpan::new(sentence, start, end, tag));
        }
    };

    for (i, &label) in labels.iter().enumerate() {
        match scheme {
            TagScheme::Io => match split_label(label) {
                LabelKind::Outside => close(&mut open, i, &mut spans),
                // in IO the whole label is the tag, prefixes and all
                _ => match open {
                    Some((_, tag)) if tag == label => {}
                    _ => {
                        close(&mut open, i, &mut spans);
                        open = Some((i, label));
                    }
                },
            },
            _ => match split_label(label) {
                LabelKind::Outside => close(&mut open, i, &mut spans),
                LabelKind::Begin(tag) => {
                    close(&mut open, i, &mut spans);
                    open = Some((i, tag));
                }
                LabelKind::Inside(tag) => match open {
                    Some((_, t)) if t == tag => {}
                    _ => {
                        if policy == RepairPolicy::Strict {
                            return Err(InvalidTransition {
                                sentence,
                                position: i,
                                label: label.to_string(),
                            });
                        }
                        close(&mut open, i, &mut spans);
                        open = Some((i, tag));
                    }
                },
                // a bare tag is never valid IOB2; leniently it continues a
                // same-tag run or begins a new one
                LabelKind::Bare(tag) => {
                    if policy == RepairPolicy::Strict {
                        return Err(InvalidTransition {
                            sentence,
                            position: i,
                            label: label.to_string(),
                        });
                    }
                    match open {
                        Some((_, t)) if t == tag => {}
                        _ => {
                            close(&mut open, i, &mut spans);
                            open = Some((i, tag));
                        }
                    }
                }
            },
        }
    }
    close(&mut open, labels.len(), &mut spans);
    Ok(spans)
}

/// Rewrite illegal labels in place per the lenient rule, or report the first
/// offender under strict. Returns the number of labels rewritten.
///
/// After a successful call the sequence extracts identically under either
/// policy.
pub fn normalize_labels(
    labels: &mut [String],
    scheme: TagScheme,
    policy: RepairPolicy,
    sentence: usize,
) -> Result<usize, InvalidTransition> {
    let scheme = scheme.resolve(labels.iter().map(|l| l.as_str()));
    if scheme == TagScheme::Io {
        return Ok(0);
    }
    let mut repairs = 0;
    // tag of the entity run still open at the previous position
    let mut open: Option<String> = None;
    for i in 0..labels.len() {
        let label = labels[i].clone();
        match split_label(&label) {
            LabelKind::Outside => open = None,
            LabelKind::Begin(tag) => open = Some(tag.to_string()),
            LabelKind::Inside(tag) => {
                if open.as_deref() == Some(tag) {
                    continue;
                }
                if policy == RepairPolicy::Strict {
                    return Err(InvalidTransition {
                        sentence,
                        position: i,
                        label,
                    });
                }
                labels[i] = alloc::format!("B-{tag}");
                repairs += 1;
                open = Some(tag.to_string());
            }
            LabelKind::Bare(tag) => {
                if policy == RepairPolicy::Strict {
                    return Err(InvalidTransition {
                        sentence,
                        position: i,
                        label,
                    });
                }
                let prefix = if open.as_deref() == Some(tag) { "I" } else { "B" };
                labels[i] = alloc::format!("{prefix}-{tag}");
                repairs += 1;
                open = Some(tag.to_string());
            }
        }
    }
    Ok(repairs)
}

/// Encode a span list back into labels; positions outside all spans are `"O"`.
///
/// For IOB2 this is the exact inverse of [`extract_spans`]. Spans must be
/// sorted by start, non-overlapping, and within `length`.
pub fn spans_to_labels(
    spans: &[EntitySpan],
    length: usize,
    scheme: TagScheme,
) -> Result<Vec<String>, SpanEncodeError> {
    for pair in spans.windows(2) {
        if pair[0].overlaps(&pair[1]) {
            return Err(SpanEncodeError::Overlap(pair[0].clone(), pair[1].clone()));
        }
    }
    let mut labels: Vec<String> = (0..length).map(|_| "O".to_string()).collect();
    for (k, span) in spans.iter().enumerate() {
        if span.is_empty() || span.end > length {
            return Err(SpanEncodeError::OutOfBounds(span.clone()));
        }
        match scheme {
            TagScheme::Io => {
                if k > 0 {
                    let prev = &spans[k - 1];
                    if prev.sentence == span.sentence
                        && prev.end == span.start
                        && prev.tag == span.tag
                    {
                        return Err(SpanEncodeError::AdjacentSameTag(prev.clone(), span.clone()));
                    }
                }
                for slot in &mut labels[span.start..span.end] {
                    *slot = span.tag.clone();
                }
            }
            _ => {
                labels[span.start] = alloc::format!("B-{}", span.tag);
                for slot in &mut labels[span.start + 1..span.end] {
                    *slot = alloc::format!("I-{}", span.tag);
                }
            }
        }
    }
    Ok(labels)
}
