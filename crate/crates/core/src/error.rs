use std::fmt;

use crate::graph::{Color, Threshold};

/// Errors raised by the toolkit's operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("color {0} is not in the color universe")]
    UnknownColor(Color),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("endpoints must be distinct (got {0} twice)")]
    SameEndpoints(usize),
    #[error("vertex {vertex} has color degree {degree}, below threshold {threshold}")]
    ThresholdViolated {
        vertex: usize,
        degree: usize,
        threshold: Threshold,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("too many colors for exhaustive oracle: {colors} > {limit}")]
    TooManyColors { colors: usize, limit: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A text-format parse failure, pointing at the offending 1-based line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

pub type Result<T, E = Error> = std::result::Result<T, E>;
