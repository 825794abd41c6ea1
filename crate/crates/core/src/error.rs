use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the analysis functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("unknown goal `{0}`")]
    UnknownGoal(String),
    #[error("unknown process `{0}`")]
    UnknownProcess(String),
    #[error("goal tree node `{path}` has both children and a scenario")]
    MixedNode { path: String },
}

/// Errors raised while reading a model document.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at `{path}` (line {line}, column {column}): {message}")]
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unresolved reference at `{path}`: no {kind} named `{id}`")]
    Reference {
        path: String,
        kind: &'static str,
        id: String,
    },
}
