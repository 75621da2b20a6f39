//! In-memory corpus model: tokens, sentences, tag schemes, and alignment.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::span::{self, EntitySpan};

/// One token of a sentence: its surface form, its raw label string, and any
/// extra columns (POS, chunk) carried through unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub label: String,
    pub columns: Vec<String>,
}

impl Token {
    pub fn new(surface: impl Into<String>, label: impl Into<String>) -> Self {
        Token {
            surface: surface.into(),
            label: label.into(),
            columns: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    /// Ordinal position in the corpus, 0-based.
    pub index: usize,
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn labels(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.label.as_str()).collect()
    }
}

/// How per-token labels encode entity boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TagScheme {
    /// `B-X` begins an entity of type X, `I-X` continues it.
    Iob2,
    /// Bare type tags with no begin marker; a tag change or `O` starts a new span.
    Io,
    /// Detect per file: any `B-`/`I-` prefix means IOB2, otherwise IO.
    Auto,
}

impl TagScheme {
    /// Resolve `Auto` against the labels actually present. Detection depends
    /// only on the multiset of labels, so it is deterministic.
    pub fn resolve<'a>(self, labels: impl IntoIterator<Item = &'a str>) -> TagScheme {
        match self {
            TagScheme::Auto => {
                let iob2 = labels
                    .into_iter()
                    .any(|l| l.starts_with("B-") || l.starts_with("I-"));
                if iob2 {
                    TagScheme::Iob2
                } else {
                    TagScheme::Io
                }
            }
            s => s,
        }
    }
}

/// What to do with label sequences that are illegal for the scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairPolicy {
    /// Invalid transitions are errors.
    Strict,
    /// An `I-X` without a preceding `B-X`/`I-X` is treated as `B-X`.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub sentences: Vec<Sentence>,
    /// Always a resolved scheme (never `Auto`) once constructed by the parser.
    pub scheme: TagScheme,
    /// Used in error messages only.
    pub source_name: String,
}

impl Corpus {
    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(|s| s.tokens.len()).sum()
    }

    /// All entity spans of the corpus, extracted leniently (parsed corpora are
    /// already validated or repaired, so this cannot fail on them).
    pub fn spans(&self) -> Vec<EntitySpan> {
        let mut out = Vec::new();
        for sent in &self.sentences {
            out.extend(self.sentence_spans(sent.index));
        }
        out
    }

    /// Entity spans of one sentence, extracted leniently.
    pub fn sentence_spans(&self, index: usize) -> Vec<EntitySpan> {
        let sent = &self.sentences[index];
        span::extract_spans(&sent.labels(), self.scheme, RepairPolicy::Lenient, index)
            .expect("lenient extraction cannot fail")
    }
}

/// First point at which two corpora stop lining up token-for-token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    SentenceCount { gold: usize, pred: usize },
    TokenCount { sentence: usize, gold: usize, pred: usize },
    Surface { sentence: usize, token: usize, gold: String, pred: String },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::SentenceCount { gold, pred } => write!(
                f,
                "sentence counts differ at sentence {}: gold has {gold}, pred has {pred}",
                core::cmp::min(*gold, *pred)
            ),
            Mismatch::TokenCount { sentence, gold, pred } => write!(
                f,
                "sentence {sentence}: token counts differ (gold {gold}, pred {pred})"
            ),
            Mismatch::Surface { sentence, token, gold, pred } => write!(
                f,
                "sentence {sentence}, token {token}: surfaces differ (gold {gold:?}, pred {pred:?})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alignment {
    Aligned,
    Misaligned(Mismatch),
}

impl Alignment {
    pub fn is_aligned(&self) -> bool {
        matches!(self, Alignment::Aligned)
    }
}

/// Two corpora are aligned when they have the same sentences with the same
/// surfaces; labels are free to differ.
pub fn check_alignment(gold: &Corpus, pred: &Corpus) -> Alignment {
    if gold.sentences.len() != pred.sentences.len() {
        return Alignment::Misaligned(Mismatch::SentenceCount {
            gold: gold.sentences.len(),
            pred: pred.sentences.len(),
        });
    }
    for (gs, ps) in gold.sentences.iter().zip(&pred.sentences) {
        if gs.tokens.len() != ps.tokens.len() {
            return Alignment::Misaligned(Mismatch::TokenCount {
                sentence: gs.index,
                gold: gs.tokens.len(),
                pred: ps.tokens.len(),
            });
        }
        for (i, (gt, pt)) in gs.tokens.iter().zip(&ps.tokens).enumerate() {
            if gt.surface != pt.surface {
                return Alignment::Misaligned(Mismatch::Surface {
                    sentence: gs.index,
                    token: i,
                    gold: gt.surface.clone(),
                    pred: pt.surface.clone(),
                });
            }
        }
    }
    Alignment::Aligned
}
