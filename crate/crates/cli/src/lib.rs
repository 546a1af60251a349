//! `propcoh`: a checker for finite presheaf models of a strict universe
//! of propositions.
//!
//! The library side hosts the model-description language (parser,
//! renderer, elaborator), the assertion evaluator, the randomized law
//! harness, the Ω tabulator, and the canned demonstrations; the `propcoh`
//! binary is a thin clap wrapper over these.

pub mod demo;
pub mod eval;
pub mod harness;
pub mod model;
pub mod omega;
pub mod report;
pub mod sexpr;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {line}:{col}: expected {expected}")]
    Parse {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("invalid model at {line}:{col}: {msg}")]
    Invalid {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("invalid model: {0}")]
    Model(String),
    #[error(transparent)]
    Core(#[from] propcoh_core::Error),
    #[error("while evaluating {loc}: {source}")]
    Eval {
        loc: String,
        source: propcoh_core::Error,
    },
    #[error("unknown demo `{0}` (expected retract, propext, or negneg)")]
    UnknownDemo(String),
    #[error("{0}")]
    Io(String),
}

/// Parses, elaborates, and runs a model file end to end.
pub fn check_text(text: &str) -> Result<report::Report, CliError> {
    let parsed = model::parse_model(text)?;
    let elaborated = model::elaborate(&parsed)?;
    eval::run_assertions(&elaborated, &parsed)
}
