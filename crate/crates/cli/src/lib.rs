//! File formats, report rendering, and the pieces behind the `nererr` CLI.
//!
//! The algorithmic core lives in `nererr-core`; this crate adds CoNLL-style
//! column-file parsing and serialization, tag-alias normalization, and text,
//! TSV, and JSON renderings of the metric, error, and lint reports.

pub mod format;
pub mod report;

pub use format::{
    apply_aliases, parse_alias_map, parse_corpus, serialize_corpus, ParseError, ParseOptions,
    ParsedCorpus,
};
pub use report::{render_errors, render_lint, render_metrics, ReportFormat};
