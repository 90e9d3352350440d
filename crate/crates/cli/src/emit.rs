//! Output documents and their renderings.

use std::fmt::Write;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use seifert_ob::exact::rational_pair;
use seifert_ob::homology::{determinant, first_homology};
use seifert_ob::plumbing::{linking_matrix, rational_euler_from_graph, star_from_seifert, Normalized};
use seifert_ob::{AbelianGroup, Classification, OpenBook, PlumbingGraph, Rational, SeifertInvariants, SurgeryPresentation};

use crate::check::CheckReport;
use crate::{CliError, Format};

/// `{rational_euler, determinant, first_homology}` of a plumbing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    #[serde(with = "rational_pair")]
    pub rational_euler: Rational,
    #[serde(with = "seifert_ob::exact::bigint")]
    pub determinant: BigInt,
    pub first_homology: AbelianGroup,
}

impl InvariantsReport {
    pub fn of_graph(graph: &PlumbingGraph) -> Result<Self, CliError> {
        let rational_euler = rational_euler_from_graph(graph).map_err(CliError::domain)?;
        let determinant = determinant(&linking_matrix(graph)).map_err(CliError::domain)?;
        Ok(InvariantsReport { rational_euler, determinant, first_homology: first_homology(graph) })
    }

    /// Invariants of the star plumbing of an eligible tuple.
    pub fn of_invariants(inv: &SeifertInvariants) -> Result<Self, CliError> {
        let graph = star_from_seifert(inv).map_err(CliError::domain)?;
        Self::of_graph(&graph)
    }
}

#[derive(Debug, Clone)]
pub enum Document {
    Normalized(Normalized),
    Invariants(InvariantsReport),
    OpenBook(OpenBook),
    Classification(Classification),
    Presentation(SurgeryPresentation),
    Check(CheckReport),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Normalized(_) => "normalize",
            Document::Invariants(_) => "invariants",
            Document::OpenBook(_) => "openbook",
            Document::Classification(_) => "classification",
            Document::Presentation(_) => "presentation",
            Document::Check(_) => "check",
        }
    }

    fn to_value(&self) -> Value {
        let v = match self {
            Document::Normalized(d) => serde_json::to_value(d),
            Document::Invariants(d) => serde_json::to_value(d),
            Document::OpenBook(d) => serde_json::to_value(d),
            Document::Classification(d) => serde_json::to_value(d),
            Document::Presentation(d) => serde_json::to_value(d),
            Document::Check(d) => serde_json::to_value(d),
        };
        v.expect("documents serialize to JSON")
    }
}

/// Renders `doc`. JSON keys are sorted, so equal documents give equal bytes.
pub fn emit(doc: &Document, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc.to_value()).expect("values serialize");
            s.push('\n');
            Ok(s)
        }
        Format::Dot => match doc {
            Document::Normalized(n) => Ok(n.graph.to_dot()),
            other => Err(CliError::Unsupported { document: other.kind(), format }),
        },
        Format::Text => Ok(text(doc)),
    }
}

fn text(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Normalized(n) => {
            let g = &n.graph;
            if let Some(c) = g.center() {
                let _ = writeln!(out, "center {}: e={}, g={}", c.id, c.euler, c.genus);
            }
            match g.branches() {
                Ok(branches) => {
                    for (i, b) in branches.iter().enumerate() {
                        let _ = writeln!(out, "branch {}: {b}", i + 1);
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "branches unavailable: {e}");
                }
            }
            let _ = writeln!(out, "moves ({}):", n.transcript.len());
            for m in n.transcript.moves() {
                let _ = writeln!(out, "  {m}");
            }
        }
        Document::Invariants(r) => {
            let _ = writeln!(out, "rational Euler number: {}", r.rational_euler);
            let _ = writeln!(out, "determinant: {}", r.determinant);
            let _ = writeln!(out, "first homology: {}", r.first_homology);
        }
        Document::OpenBook(ob) => {
            let _ = writeln!(out, "{ob}");
        }
        Document::Classification(c) => out.push_str(&c.to_string()),
        Document::Presentation(p) => out.push_str(&p.to_string()),
        Document::Check(r) => out.push_str(&r.to_string()),
    }
    out
}
