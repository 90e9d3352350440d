//! `sfob`: command-line front end for the `seifert-ob` library.
//!
//! Every subcommand reads one JSON document, runs a library operation and
//! emits the result as JSON (stable, sorted keys), DOT (graphs only) or
//! plain text (for reading, not parsing).
//!
//! Exit codes: 0 success, 1 invalid invocation or schema violation, 2 domain
//! error reported by the library, 3 a `check` property failed.

pub mod check;
pub mod emit;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use seifert_ob::openbook::{
    classify_boundary_word, construct_horizontal_open_book, surgery_presentation,
};
use seifert_ob::plumbing::normalize_to_standard;
use seifert_ob::{Curve, PlumbingGraph, SeifertInvariants, TwistWord};

pub use check::CheckReport;
pub use emit::{emit, Document, InvariantsReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("{0}")]
    Domain(String),
    #[error("{document} documents cannot be emitted as {format}")]
    Unsupported { document: &'static str, format: Format },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Schema(_) | CliError::Unsupported { .. } => 1,
            CliError::Domain(_) => 2,
        }
    }

    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Dot,
    Text,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Text => "text",
        })
    }
}

#[derive(Debug, Parser)]
#[command(name = "sfob", version, about = "Horizontal open books and plumbing calculus on Seifert fibered 3-manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Io {
    /// Input document path ("-" for stdin).
    #[arg(long, conflicts_with = "json")]
    pub input: Option<PathBuf>,
    /// Inline input document.
    #[arg(long)]
    pub json: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Seifert invariants to the standard plumbing graph plus move transcript.
    Normalize(#[command(flatten)] Io),
    /// Rational Euler number, determinant and first homology of a plumbing
    /// graph or of the star of Seifert invariants.
    Invariants(#[command(flatten)] Io),
    /// Horizontal open book of Seifert invariants.
    Openbook(#[command(flatten)] Io),
    /// Classify a boundary-twist word `{"genus", "exponents"}`.
    Classify(#[command(flatten)] Io),
    /// Contact surgery presentation of `{"genus", "boundary_count", "word", "disjoint"}`.
    Present(#[command(flatten)] Io),
    /// Run the invariance suite on given invariants or a seeded random batch.
    Check {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

impl Command {
    pub fn io(&self) -> &Io {
        match self {
            Command::Normalize(io)
            | Command::Invariants(io)
            | Command::Openbook(io)
            | Command::Classify(io)
            | Command::Present(io) => io,
            Command::Check { io, .. } => io,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassifyInput {
    genus: u32,
    exponents: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentInput {
    genus: u32,
    boundary_count: usize,
    word: TwistWord,
    #[serde(default)]
    disjoint: Vec<(Curve, Curve)>,
}

fn read_source(io: &Io) -> Result<Option<String>, CliError> {
    match (&io.input, &io.json) {
        (Some(path), None) if path.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
            Ok(Some(s))
        }
        (Some(path), None) => fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display()))),
        (None, Some(text)) => Ok(Some(text.clone())),
        (None, None) => Ok(None),
        (Some(_), Some(_)) => Err(CliError::Usage("--input and --json are mutually exclusive".into())),
    }
}

fn require_source(io: &Io) -> Result<Value, CliError> {
    let text = read_source(io)?
        .ok_or_else(|| CliError::Usage("an input document is required (--input PATH or --json TEXT)".into()))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))
}

/// Deserializes `value`, prefixing errors with the path of the offending field.
pub fn from_value<T: DeserializeOwned>(value: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            CliError::Schema(e.into_inner().to_string())
        } else {
            CliError::Schema(format!("{path}: {}", e.into_inner()))
        }
    })
}

fn is_graph(value: &Value) -> bool {
    value.get("vertices").is_some() || value.get("edges").is_some()
}

/// Runs `command` and returns the document it produces. Failing `check`
/// properties are reported through the returned report, not as an error.
pub fn run(command: &Command) -> Result<Document, CliError> {
    match command {
        Command::Normalize(io) => {
            let inv: SeifertInvariants = from_value(require_source(io)?)?;
            let normalized = normalize_to_standard(&inv).map_err(CliError::domain)?;
            Ok(Document::Normalized(normalized))
        }
        Command::Invariants(io) => {
            let value = require_source(io)?;
            let report = if is_graph(&value) {
                let graph: PlumbingGraph = from_value(value)?;
                InvariantsReport::of_graph(&graph)?
            } else {
                let inv: SeifertInvariants = from_value(value)?;
                InvariantsReport::of_invariants(&inv)?
            };
            Ok(Document::Invariants(report))
        }
        Command::Openbook(io) => {
            let inv: SeifertInvariants = from_value(require_source(io)?)?;
            let ob = construct_horizontal_open_book(&inv).map_err(CliError::domain)?;
            Ok(Document::OpenBook(ob))
        }
        Command::Classify(io) => {
            let input: ClassifyInput = from_value(require_source(io)?)?;
            let cls = classify_boundary_word(input.genus, &input.exponents).map_err(CliError::domain)?;
            Ok(Document::Classification(cls))
        }
        Command::Present(io) => {
            let input: PresentInput = from_value(require_source(io)?)?;
            if input.boundary_count == 0 {
                return Err(CliError::Domain("page needs at least one boundary component".into()));
            }
            for c in input.word.curves() {
                let stray = c.as_str().strip_prefix("delta").and_then(|n| n.parse::<usize>().ok());
                if let Some(i) = stray.filter(|&i| i == 0 || i > input.boundary_count) {
                    return Err(CliError::Domain(format!(
                        "curve {c} names boundary component {i} but the page has {}",
                        input.boundary_count
                    )));
                }
            }
            let mut word = input.word;
            for (a, b) in input.disjoint {
                word.declare_disjoint(a, b);
            }
            let presentation = surgery_presentation(input.genus, input.boundary_count, &word);
            debug_assert!(presentation.recombines_to(&word));
            Ok(Document::Presentation(presentation))
        }
        Command::Check { io, seed, cases } => {
            let inputs = match read_source(io)? {
                None => None,
                Some(text) => {
                    let value: Value = serde_json::from_str(&text)
                        .map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))?;
                    let list: Vec<SeifertInvariants> = match value {
                        Value::Array(_) => from_value(value)?,
                        other => vec![from_value(other)?],
                    };
                    for (i, inv) in list.iter().enumerate() {
                        let report = inv.validate_eligible();
                        if !report.eligible {
                            return Err(CliError::Domain(format!("case {i}: not in eligible class: {report}")));
                        }
                    }
                    Some(list)
                }
            };
            Ok(Document::Check(check::run_suite(*seed, *cases, inputs)))
        }
    }
}

/// Runs `command`, emits its document and applies the check exit contract.
/// Returns the emitted text and the exit code.
pub fn execute(command: &Command) -> Result<(String, i32), CliError> {
    let doc = run(command)?;
    let text = emit(&doc, command.io().format)?;
    let code = match &doc {
        Document::Check(report) if !report.passed => 3,
        _ => 0,
    };
    Ok((text, code))
}
