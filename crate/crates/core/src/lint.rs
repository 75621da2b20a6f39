//! Cross-split annotation consistency checks.
//!
//! Four patterns are detected over gold-labeled splits (train/dev/test):
//! entities labeled in one split but left unlabeled in another, identical
//! surfaces carrying different tags, designator head words (e.g. "làng",
//! "công_ty") sometimes inside and sometimes outside a span, and
//! capitalization of such designators flipping between those two positions.
//! Findings are advisory; nothing is ever rewritten.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::corpus::Corpus;
use crate::span::EntitySpan;
use crate::taxonomy::spans_by_sentence;

/// Ordered by severity of presentation; findings sort in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LintKind {
    UnlabeledElsewhere,
    TagConflict,
    RangeConflict,
    CaseConflict,
}

impl LintKind {
    pub fn name(self) -> &'static str {
        match self {
            LintKind::UnlabeledElsewhere => "UnlabeledElsewhere",
            LintKind::TagConflict => "TagConflict",
            LintKind::RangeConflict => "RangeConflict",
            LintKind::CaseConflict => "CaseConflict",
        }
    }
}

/// One location involved in a finding. `tag` is `None` where the tokens are
/// unlabeled at that location.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Occurrence {
    pub split: String,
    pub sentence: usize,
    pub start: usize,
    pub end: usize,
    pub tag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LintFinding {
    pub kind: LintKind,
    /// Entity surface or lowercased designator, depending on the kind.
    pub surface: String,
    pub occurrences: Vec<Occurrence>,
    pub note: String,
}

struct SentView<'a> {
    surfaces: Vec<&'a str>,
    spans: Vec<EntitySpan>,
    /// token positions covered by some span
    covered: Vec<bool>,
}

struct SplitView<'a> {
    name: &'a str,
    sentences: Vec<SentView<'a>>,
}

fn build_views<'a>(splits: &[(&'a str, &'a Corpus)]) -> Vec<SplitView<'a>> {
    splits
        .iter()
        .map(|(name, corpus)| {
            let spans = spans_by_sentence(corpus);
            let sentences = corpus
                .sentences
                .iter()
                .zip(spans)
                .map(|(sent, spans)| {
                    let mut covered = alloc::vec![false; sent.tokens.len()];
                    for s in &spans {
                        for slot in &mut covered[s.start..s.end] {
                            *slot = true;
                        }
                    }
                    SentView {
                        surfaces: sent.tokens.iter().map(|t| t.surface.as_str()).collect(),
                        spans,
                        covered,
                    }
                })
                .collect();
            SplitView { name, sentences }
        })
        .collect()
}

/// surface token sequence -> all labeled occurrences across splits
fn labeled_index(views: &[SplitView<'_>]) -> BTreeMap<Vec<String>, Vec<Occurrence>> {
    let mut index: BTreeMap<Vec<String>, Vec<Occurrence>> = BTreeMap::new();
    for view in views {
        for (si, sent) in view.sentences.iter().enumerate() {
            for span in &sent.spans {
                let key: Vec<String> = sent.surfaces[span.start..span.end]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                index.entry(key).or_default().push(Occurrence {
                    split: view.name.to_string(),
                    sentence: si,
                    start: span.start,
                    end: span.end,
                    tag: Some(span.tag.clone()),
                });
            }
        }
    }
    index
}

fn finding(kind: LintKind, surface: String, mut occurrences: Vec<Occurrence>, note: String) -> LintFinding {
    occurrences.sort();
    occurrences.dedup();
    LintFinding {
        kind,
        surface,
        occurrences,
        note,
    }
}

fn sort_findings(mut findings: Vec<LintFinding>) -> Vec<LintFinding> {
    findings.sort_by(|a, b| {
        (a.kind, &a.surface, a.occurrences.first())
            .cmp(&(b.kind, &b.surface, b.occurrences.first()))
    });
    findings
}

/// Entities labeled as a full span in one split whose exact token sequence
/// appears fully unlabeled in another split.
pub fn lint_unlabeled(splits: &[(&str, &Corpus)]) -> Vec<LintFinding> {
    let views = build_views(splits);
    let labeled = labeled_index(&views);
    let lengths: BTreeSet<usize> = labeled.keys().map(|k| k.len()).collect();

    let mut unlabeled: BTreeMap<&Vec<String>, Vec<Occurrence>> = BTreeMap::new();
    for view in &views {
        for (si, sent) in view.sentences.iter().enumerate() {
            for start in 0..sent.surfaces.len() {
                for &len in &lengths {
                    let end = start + len;
                    if end > sent.surfaces.len() {
                        break;
                    }
                    if sent.covered[start..end].iter().any(|&c| c) {
                        continue;
                    }
                    let window: Vec<String> = sent.surfaces[start..end]
                        .iter()
                        .map(|s| s.to_string())
                        .collect();
                    if let Some((key, _)) = labeled.get_key_value(&window) {
                        unlabeled.entry(key).or_default().push(Occurrence {
                            split: view.name.to_string(),
                            sentence: si,
                            start,
                            end,
                            tag: None,
                        });
                    }
                }
            }
        }
    }

    let mut findings = Vec::new();
    for (key, bare) in unlabeled {
        let tagged = &labeled[key];
        let conflicts = tagged.iter().any(|t| bare.iter().any(|b| b.split != t.split));
        if !conflicts {
            continue;
        }
        let surface = key.join(" ");
        let labeled_splits: BTreeSet<&str> = tagged.iter().map(|o| o.split.as_str()).collect();
        let bare_splits: BTreeSet<&str> = bare.iter().map(|o| o.split.as_str()).collect();
        let note = format!(
            "\"{surface}\" is labeled in {} but appears unlabeled in {}",
            join(&labeled_splits),
            join(&bare_splits)
        );
        let mut occurrences = tagged.clone();
        occurrences.extend(bare);
        findings.push(finding(LintKind::UnlabeledElsewhere, surface, occurrences, note));
    }
    sort_findings(findings)
}

/// Identical entity surfaces carrying different tags in different splits.
pub fn lint_tag_conflict(splits: &[(&str, &Corpus)]) -> Vec<LintFinding> {
    let views = build_views(splits);
    let mut findings = Vec::new();
    for (key, occs) in labeled_index(&views) {
        let conflicts = occs.iter().any(|a| {
            occs.iter()
                .any(|b| a.tag != b.tag && a.split != b.split)
        });
        if !conflicts {
            continue;
        }
        let surface = key.join(" ");
        let tags: BTreeSet<&str> = occs.iter().filter_map(|o| o.tag.as_deref()).collect();
        let note = format!(
            "\"{surface}\" is tagged inconsistently across splits: {}",
            join(&tags)
        );
        findings.push(finding(LintKind::TagConflict, surface, occs, note));
    }
    sort_findings(findings)
}

/// A designator occurrence: the head word either opens a span (inside) or
/// immediately precedes one (outside).
struct DesignatorUse {
    occurrence: Occurrence,
    tag: String,
    inside: bool,
    /// first letter of the designator as written at this location
    upper: bool,
    lower: bool,
}

/// lowercased designator -> uses
fn designator_index(views: &[SplitView<'_>]) -> BTreeMap<String, Vec<DesignatorUse>> {
    let mut index: BTreeMap<String, Vec<DesignatorUse>> = BTreeMap::new();
    for view in views {
        for (si, sent) in view.sentences.iter().enumerate() {
            for span in &sent.spans {
                // inside: a multi-token span whose first token may be a designator
                if span.len() >= 2 {
                    let word = sent.surfaces[span.start];
                    let first = word.chars().next().unwrap_or(' ');
                    index.entry(word.to_lowercase()).or_default().push(DesignatorUse {
                        occurrence: Occurrence {
                            split: view.name.to_string(),
                            sentence: si,
                            start: span.start,
                            end: span.end,
                            tag: Some(span.tag.clone()),
                        },
                        tag: span.tag.clone(),
                        inside: true,
                        upper: first.is_uppercase(),
                        lower: first.is_lowercase(),
                    });
                }
                // outside: an uncovered token directly before the span
                if span.start > 0 && !sent.covered[span.start - 1] {
                    let word = sent.surfaces[span.start - 1];
                    let first = word.chars().next().unwrap_or(' ');
                    index.entry(word.to_lowercase()).or_default().push(DesignatorUse {
                        occurrence: Occurrence {
                            split: view.name.to_string(),
                            sentence: si,
                            start: span.start - 1,
                            end: span.end,
                            tag: Some(span.tag.clone()),
                        },
                        tag: span.tag.clone(),
                        inside: false,
                        upper: first.is_uppercase(),
                        lower: first.is_lowercase(),
                    });
                }
            }
        }
    }
    index
}

/// A designator included as a span's first token in one place but left just
/// outside a same-tag span in another (the pure capitalization flip is
/// reported by [`lint_case_conflict`] instead).
pub fn lint_range_conflict(splits: &[(&str, &Corpus)]) -> Vec<LintFinding> {
    designator_conflicts(splits, false)
}

/// A designator capitalized inside a span in one place and lowercase just
/// before a same-tag span in another.
pub fn lint_case_conflict(splits: &[(&str, &Corpus)]) -> Vec<LintFinding> {
    designator_conflicts(splits, true)
}

fn designator_conflicts(splits: &[(&str, &Corpus)], case: bool) -> Vec<LintFinding> {
    let views = build_views(splits);
    let mut findings = Vec::new();
    for (designator, uses) in designator_index(&views) {
        let mut hits: Vec<&DesignatorUse> = Vec::new();
        for i in uses.iter().filter(|u| u.inside) {
            for o in uses.iter().filter(|u| !u.inside) {
                if i.tag != o.tag {
                    continue;
                }
                let case_pair = i.upper && o.lower;
                if case_pair == case {
                    hits.push(i);
                    hits.push(o);
                }
            }
        }
        if hits.is_empty() {
            continue;
        }
        let occurrences: Vec<Occurrence> = hits.iter().map(|u| u.occurrence.clone()).collect();
        let (kind, note) = if case {
            (
                LintKind::CaseConflict,
                format!("designator \"{designator}\" is capitalized inside some spans but lowercase before others"),
            )
        } else {
            (
                LintKind::RangeConflict,
                format!("designator \"{designator}\" is included in some spans but left outside others"),
            )
        };
        findings.push(finding(kind, designator, occurrences, note));
    }
    sort_findings(findings)
}

/// Run all four lints and merge their findings into one sorted list.
pub fn lint_all(splits: &[(&str, &Corpus)]) -> Vec<LintFinding> {
    let mut findings = lint_unlabeled(splits);
    findings.extend(lint_tag_conflict(splits));
    findings.extend(lint_range_conflict(splits));
    findings.extend(lint_case_conflict(splits));
    sort_findings(findings)
}

fn join(items: &BTreeSet<&str>) -> String {
    let mut out = String::new();
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(item);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Sentence, TagScheme, Token};
    use alloc::vec;
    use alloc::vec::Vec;

    fn corpus(name: &str, sentences: &[&[(&str, &str)]]) -> Corpus {
        let sentences: Vec<Sentence> = sentences
            .iter()
            .enumerate()
            .map(|(index, toks)| Sentence {
                index,
                tokens: toks.iter().map(|(s, l)| Token::new(*s, *l)).collect(),
            })
            .collect();
        Corpus {
            sentences,
            scheme: TagScheme::Iob2,
            source_name: name.to_string(),
        }
    }

    #[test]
    fn unlabeled_elsewhere_detected() {
        let train = corpus(
            "train",
            &[&[("Sở", "B-ORG"), ("Y_tế", "I-ORG"), ("họp", "O")]],
        );
        let test = corpus("test", &[&[("Sở", "O"), ("Y_tế", "O")]]);
        let findings = lint_unlabeled(&[("train", &train), ("test", &test)]);
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].kind, LintKind::UnlabeledElsewhere);
        assert_eq!(findings[0].surface, "Sở Y_tế");
        assert_eq!(findings[0].occurrences.len(), 2);
    }

    #[test]
    fn labeled_in_both_splits_is_fine() {
        let train = corpus("train", &[&[("Sở", "B-ORG"), ("Y_tế", "I-ORG")]]);
        let test = corpus("test", &[&[("Sở", "B-ORG"), ("Y_tế", "I-ORG")]]);
        assert!(lint_unlabeled(&[("train", &train), ("test", &test)]).is_empty());
    }

    #[test]
    fn tag_conflict_detected() {
        let train = corpus("train", &[&[("người", "O"), ("Việt", "B-MISC")]]);
        let test = corpus("test", &[&[("dân", "O"), ("Việt", "B-LOC")]]);
        let findings = lint_tag_conflict(&[("train", &train), ("test", &test)]);
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].surface, "Việt");
        assert!(findings[0].note.contains("LOC"));
        assert!(findings[0].note.contains("MISC"));
    }

    #[test]
    fn same_tag_everywhere_is_fine() {
        let train = corpus("train", &[&[("Việt", "B-LOC")]]);
        let test = corpus("test", &[&[("Việt", "B-LOC")]]);
        assert!(lint_tag_conflict(&[("train", &train), ("test", &test)]).is_empty());
    }

    #[test]
    fn range_conflict_detected() {
        let train = corpus("train", &[&[("làng", "B-LOC"), ("Atâu", "I-LOC")]]);
        let test = corpus("test", &[&[("làng", "O"), ("Hàn_Quốc", "B-LOC")]]);
        let findings = lint_range_conflict(&[("train", &train), ("test", &test)]);
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].surface, "làng");
        assert_eq!(findings[0].occurrences.len(), 2);
        // lowercase both sides: a range issue, not a case issue
        assert!(lint_case_conflict(&[("train", &train), ("test", &test)]).is_empty());
    }

    #[test]
    fn designator_always_outside_is_fine() {
        let train = corpus("train", &[&[("làng", "O"), ("Atâu", "B-LOC")]]);
        let test = corpus("test", &[&[("làng", "O"), ("Hàn_Quốc", "B-LOC")]]);
        assert!(lint_range_conflict(&[("train", &train), ("test", &test)]).is_empty());
    }

    #[test]
    fn case_conflict_detected() {
        let train = corpus("train", &[&[("Công_ty", "B-ORG"), ("Inmasco", "I-ORG")]]);
        let test = corpus(
            "test",
            &[&[
                ("công_ty", "O"),
                ("Yeon", "B-ORG"),
                ("Young", "I-ORG"),
                ("Entertainment", "I-ORG"),
            ]],
        );
        let splits = [("train", &train), ("test", &test)];
        let findings = lint_case_conflict(&splits);
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].surface, "công_ty");
        // the capitalization flip is not double-reported as a range conflict
        assert!(lint_range_conflict(&splits).is_empty());
    }

    #[test]
    fn consistent_split_against_itself_is_clean() {
        let c = corpus(
            "train",
            &[
                &[("Hà_Nội", "B-LOC"), ("đẹp", "O")],
                &[("ông", "O"), ("Nguyễn", "B-PER"), ("Văn", "I-PER")],
            ],
        );
        assert!(lint_all(&[("a", &c), ("b", &c)]).is_empty());
    }

    #[test]
    fn findings_sorted_by_kind() {
        let train = corpus(
            "train",
            &[
                &[("Sở", "B-ORG"), ("Y_tế", "I-ORG")],
                &[("Việt", "B-MISC")],
                &[("làng", "B-LOC"), ("Atâu", "I-LOC")],
                &[("Công_ty", "B-ORG"), ("Inmasco", "I-ORG")],
            ],
        );
        let test = corpus(
            "test",
            &[
                &[("Sở", "O"), ("Y_tế", "O")],
                &[("Việt", "B-LOC")],
                &[("làng", "O"), ("Hàn_Quốc", "B-LOC")],
                &[("công_ty", "O"), ("Yeon", "B-ORG"), ("Young", "I-ORG")],
            ],
        );
        let findings = lint_all(&[("train", &train), ("test", &test)]);
        let kinds: Vec<LintKind> = findings.iter().map(|f| f.kind).collect();
        assert_eq!(
            kinds,
            vec![
                LintKind::UnlabeledElsewhere,
                LintKind::TagConflict,
                LintKind::RangeConflict,
                LintKind::CaseConflict,
            ]
        );
    }
}
