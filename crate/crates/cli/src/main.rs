//! `nererr` — span-level NER evaluation against gold annotations.
//!
//! Exit codes are a stable contract: 0 success (lint: no findings), 1 usage
//! error, 2 parse error, 3 alignment mismatch, 4 lint findings present.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use nererr_core::lint::lint_all;
use nererr_core::{analyze, evaluate, AlignmentError, Corpus, RepairPolicy, TagScheme};
use nererr::format::{apply_aliases, parse_alias_map, parse_corpus, ParseError, ParseOptions};
use nererr::report::{render_errors, render_lint, render_metrics, ReportFormat};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ALIGNMENT: u8 = 3;
const EXIT_FINDINGS: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "nererr",
    version,
    about = "Span-level NER evaluation: metrics, five-type error analysis, and corpus linting",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute per-tag and overall precision/recall/F1.
    Evaluate(EvaluateArgs),
    /// Classify disagreements into the five error types, from both sides.
    Errors(ErrorsArgs),
    /// Check gold-labeled splits for annotator inconsistencies.
    Lint(LintArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Tag scheme of the label column.
    #[arg(long, value_enum, default_value_t = SchemeArg::Auto)]
    scheme: SchemeArg,
    /// What to do with illegal label transitions.
    #[arg(long, value_enum, default_value_t = PolicyArg::Lenient)]
    policy: PolicyArg,
    /// Column holding the token surface.
    #[arg(long, default_value_t = 0)]
    token_column: usize,
    /// Column holding the label; negative counts from the end of the line.
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    label_column: isize,
    /// Tag alias file (one FROM=TO per line), applied after parsing.
    #[arg(long, value_name = "FILE")]
    aliases: Option<PathBuf>,
    /// Output format (default from NERERR_FORMAT, else text).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Shorthand for --format json.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Gold-annotated corpus file.
    #[arg(long, value_name = "FILE")]
    gold: PathBuf,
    /// Predicted corpus file.
    #[arg(long, value_name = "FILE")]
    pred: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct ErrorsArgs {
    #[arg(long, value_name = "FILE")]
    gold: PathBuf,
    #[arg(long, value_name = "FILE")]
    pred: PathBuf,
    /// Which side's report(s) to print.
    #[arg(long, value_enum, default_value_t = DirectionArg::Both)]
    direction: DirectionArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct LintArgs {
    /// Named split, as NAME=PATH; give at least two.
    #[arg(long = "split", value_name = "NAME=PATH")]
    splits: Vec<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Auto,
    Iob2,
    Io,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Strict,
    Lenient,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum DirectionArg {
    Gold,
    Pred,
    Both,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Parse(String),
    Alignment(AlignmentError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Alignment(_) => EXIT_ALIGNMENT,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Parse(m) => m.clone(),
            CliError::Alignment(e) => e.to_string(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<AlignmentError> for CliError {
    fn from(e: AlignmentError) -> Self {
        CliError::Alignment(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("nererr: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Evaluate(args) => {
            let common = &args.common;
            let format = resolve_format(common)?;
            let gold = load_corpus(&args.gold, common)?;
            let pred = load_corpus(&args.pred, common)?;
            let report = evaluate(&gold, &pred)?;
            print!("{}", render_metrics(&report, format));
            Ok(0)
        }
        Command::Errors(args) => {
            let common = &args.common;
            let format = resolve_format(common)?;
            let gold = load_corpus(&args.gold, common)?;
            let pred = load_corpus(&args.pred, common)?;
            let (gold_report, pred_report) = analyze(&gold, &pred)?;
            let reports: Vec<&nererr_core::ErrorReport> = match args.direction {
                DirectionArg::Gold => vec![&gold_report],
                DirectionArg::Pred => vec![&pred_report],
                DirectionArg::Both => vec![&gold_report, &pred_report],
            };
            print!("{}", render_errors(&reports, format));
            Ok(0)
        }
        Command::Lint(args) => {
            let common = &args.common;
            let format = resolve_format(common)?;
            if args.splits.len() < 2 {
                return Err(CliError::Usage(
                    "lint needs at least two --split NAME=PATH arguments".to_string(),
                ));
            }
            let mut corpora: Vec<(String, Corpus)> = Vec::new();
            for spec in &args.splits {
                let (name, path) = spec.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!("--split {spec:?} is not of the form NAME=PATH"))
                })?;
                corpora.push((name.to_string(), load_corpus(Path::new(path), common)?));
            }
            let splits: Vec<(&str, &Corpus)> =
                corpora.iter().map(|(n, c)| (n.as_str(), c)).collect();
            let findings = lint_all(&splits);
            print!("{}", render_lint(&findings, format));
            Ok(if findings.is_empty() { 0 } else { EXIT_FINDINGS })
        }
    }
}

fn resolve_format(common: &CommonArgs) -> Result<ReportFormat, CliError> {
    if common.json {
        return Ok(ReportFormat::Json);
    }
    let arg = match common.format {
        Some(f) => f,
        None => match std::env::var("NERERR_FORMAT") {
            Ok(value) => match value.to_ascii_lowercase().as_str() {
                "text" => FormatArg::Text,
                "tsv" => FormatArg::Tsv,
                "json" => FormatArg::Json,
                other => {
                    return Err(CliError::Usage(format!(
                        "NERERR_FORMAT={other:?} is not one of text, tsv, json"
                    )))
                }
            },
            Err(_) => FormatArg::Text,
        },
    };
    Ok(match arg {
        FormatArg::Text => ReportFormat::Text,
        FormatArg::Tsv => ReportFormat::Tsv,
        FormatArg::Json => ReportFormat::Json,
    })
}

fn load_corpus(path: &Path, common: &CommonArgs) -> Result<Corpus, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let opts = ParseOptions {
        token_column: common.token_column,
        label_column: common.label_column,
        scheme: match common.scheme {
            SchemeArg::Auto => TagScheme::Auto,
            SchemeArg::Iob2 => TagScheme::Iob2,
            SchemeArg::Io => TagScheme::Io,
        },
        policy: match common.policy {
            PolicyArg::Strict => RepairPolicy::Strict,
            PolicyArg::Lenient => RepairPolicy::Lenient,
        },
    };
    let parsed = parse_corpus(&text, &path.display().to_string(), &opts)?;
    if parsed.repairs > 0 {
        eprintln!(
            "nererr: repaired {} illegal label transition(s) in {}",
            parsed.repairs,
            path.display()
        );
    }
    let mut corpus = parsed.corpus;
    if let Some(alias_path) = &common.aliases {
        let alias_text = std::fs::read_to_string(alias_path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", alias_path.display())))?;
        let aliases: BTreeMap<String, String> =
            parse_alias_map(&alias_text, &alias_path.display().to_string())?;
        apply_aliases(&mut corpus, &aliases);
    }
    Ok(corpus)
}
