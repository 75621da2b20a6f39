//! CoNLL-style column file parsing and serialization.
//!
//! Input is UTF-8, newline-delimited; a blank line ends a sentence, columns
//! are separated by any run of spaces or tabs, and lines whose first field is
//! `-DOCSTART-` are document markers, not tokens. Output is canonical:
//! single-space separators, exactly one blank line between sentences.

use std::collections::BTreeMap;

use nererr_core::span::normalize_labels;
use nererr_core::{Corpus, RepairPolicy, Sentence, TagScheme, Token};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{file}:{line}: {reason}")]
    MalformedLine {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("{file}: sentence {sentence}, token {position}: label {label:?} has no legal predecessor")]
    InvalidTransition {
        file: String,
        sentence: usize,
        position: usize,
        label: String,
    },
    #[error("{file}: input contains no sentences")]
    EmptyInput { file: String },
}

#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Column holding the token surface.
    pub token_column: usize,
    /// Column holding the label; negative counts from the end of the line.
    pub label_column: isize,
    pub scheme: TagScheme,
    pub policy: RepairPolicy,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            token_column: 0,
            label_column: -1,
            scheme: TagScheme::Auto,
            policy: RepairPolicy::Lenient,
        }
    }
}

/// A parsed corpus plus the number of labels the lenient policy rewrote.
#[derive(Debug, Clone)]
pub struct ParsedCorpus {
    pub corpus: Corpus,
    pub repairs: usize,
}

pub fn parse_corpus(
    text: &str,
    source_name: &str,
    opts: &ParseOptions,
) -> Result<ParsedCorpus, ParseError> {
    let mut sentences: Vec<Sentence> = Vec::new();
    let mut tokens: Vec<Token> = Vec::new();

    let flush = |tokens: &mut Vec<Token>, sentences: &mut Vec<Sentence>| {
        if !tokens.is_empty() {
            sentences.push(Sentence {
                index: sentences.len(),
                tokens: std::mem::take(tokens),
            });
        }
    };

    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            // consecutive blank lines collapse
            flush(&mut tokens, &mut sentences);
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "-DOCSTART-" {
            continue;
        }
        let label_idx = if opts.label_column < 0 {
            fields.len() as isize + opts.label_column
        } else {
            opts.label_column
        };
        let malformed = |reason: String| ParseError::MalformedLine {
            file: source_name.to_string(),
            line: lineno + 1,
            reason,
        };
        if opts.token_column >= fields.len() {
            return Err(malformed(format!(
                "line has {} column(s), token column {} not present",
                fields.len(),
                opts.token_column
            )));
        }
        if label_idx < 0 || label_idx as usize >= fields.len() {
            return Err(malformed(format!(
                "line has {} column(s), label column {} not present",
                fields.len(),
                opts.label_column
            )));
        }
        let label_idx = label_idx as usize;
        if label_idx == opts.token_column {
            return Err(malformed(format!(
                "token column {} and label column {} resolve to the same field",
                opts.token_column, opts.label_column
            )));
        }
        let columns = fields
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != opts.token_column && i != label_idx)
            .map(|(_, f)| f.to_string())
            .collect();
        tokens.push(Token {
            surface: fields[opts.token_column].to_string(),
            label: fields[label_idx].to_string(),
            columns,
        });
    }
    flush(&mut tokens, &mut sentences);

    if sentences.is_empty() {
        return Err(ParseError::EmptyInput {
            file: source_name.to_string(),
        });
    }

    let scheme = opts
        .scheme
        .resolve(sentences.iter().flat_map(|s| s.tokens.iter().map(|t| t.label.as_str())));

    let mut repairs = 0;
    for sentence in &mut sentences {
        let mut labels: Vec<String> = sentence.tokens.iter().map(|t| t.label.clone()).collect();
        repairs += normalize_labels(&mut labels, scheme, opts.policy, sentence.index).map_err(
            |e| ParseError::InvalidTransition {
                file: source_name.to_string(),
                sentence: e.sentence,
                position: e.position,
                label: e.label,
            },
        )?;
        for (token, label) in sentence.tokens.iter_mut().zip(labels) {
            token.label = label;
        }
    }

    Ok(ParsedCorpus {
        corpus: Corpus {
            sentences,
            scheme,
            source_name: source_name.to_string(),
        },
        repairs,
    })
}

/// Canonical single-space column text; parsing it back reproduces the corpus
/// token-for-token and label-for-label.
pub fn serialize_corpus(corpus: &Corpus) -> String {
    let mut out = String::new();
    for (i, sentence) in corpus.sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for token in &sentence.tokens {
            out.push_str(&token.surface);
            for column in &token.columns {
                out.push(' ');
                out.push_str(column);
            }
            out.push(' ');
            out.push_str(&token.label);
            out.push('\n');
        }
    }
    out
}

/// Parse a tag alias file: one `FROM=TO` (or whitespace-separated `FROM TO`)
/// mapping per line, `#` starts a comment.
pub fn parse_alias_map(text: &str, source_name: &str) -> Result<BTreeMap<String, String>, ParseError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (from, to) = if let Some((a, b)) = line.split_once('=') {
            (a.trim(), b.trim())
        } else {
            let mut fields = line.split_whitespace();
            match (fields.next(), fields.next()) {
                (Some(a), Some(b)) => (a, b),
                _ => ("", ""),
            }
        };
        if from.is_empty() || to.is_empty() {
            return Err(ParseError::MalformedLine {
                file: source_name.to_string(),
                line: lineno + 1,
                reason: format!("expected FROM=TO, got {raw:?}"),
            });
        }
        map.insert(from.to_string(), to.to_string());
    }
    Ok(map)
}

/// Rewrite the tag part of every label through the alias map; scheme prefixes
/// and `O` labels are untouched.
pub fn apply_aliases(corpus: &mut Corpus, aliases: &BTreeMap<String, String>) {
    if aliases.is_empty() {
        return;
    }
    for sentence in &mut corpus.sentences {
        for token in &mut sentence.tokens {
            if token.label == "O" {
                continue;
            }
            let (prefix, tag) = match token.label.split_once('-') {
                Some((p @ ("B" | "I"), tag)) => (Some(p), tag),
                _ => (None, token.label.as_str()),
            };
            if let Some(replacement) = aliases.get(tag) {
                token.label = match prefix {
                    Some(p) => format!("{p}-{replacement}"),
                    None => replacement.clone(),
                };
            }
        }
    }
}
