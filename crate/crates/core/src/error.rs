use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the solver stack.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("overflow evaluating {what} at {at}")]
    Overflow { what: &'static str, at: f64 },

    #[error(
        "series did not converge within {max_degree} total-degree blocks (tail estimate {tail:e})"
    )]
    NonConvergence { max_degree: usize, tail: f64 },

    #[error(
        "series lost precision to cancellation (rounding estimate {estimate:e} exceeds {limit:e})"
    )]
    Cancellation { estimate: f64, limit: f64 },

    #[error("quadrature did not reach tolerance (error estimate {estimate:e})")]
    QuadratureFailure { estimate: f64 },

    #[error("located {found} zeros of the mode transfer function but the argument principle counts {expected}")]
    PoleSearch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mode index {index} out of range (spectrum holds {available} modes)")]
    IndexOutOfRange { index: usize, available: usize },

    #[error("point {point} lies outside the operator domain {domain}")]
    DomainViolation { point: String, domain: &'static str },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "mode {index} is resonant (denominator {denominator:e}); use the resonant family solver"
    )]
    Resonance { index: usize, denominator: f64 },

    #[error("modes {0:?} are resonant but carry nonzero forcing; no solution exists")]
    ResonantInfeasible(Vec<usize>),

    #[error("missing mode solution for index {0}")]
    MissingMode(usize),

    #[error("time {0} is not a node of the time grid")]
    NotOnGrid(f64),

    #[error("grid too coarse: {nodes} nodes, need at least {required}")]
    GridTooCoarse { nodes: usize, required: usize },

    #[error("configuration parse error: {0}")]
    Parse(String),

    #[error("configuration invalid:\n{}", .0.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n"))]
    Validation(Vec<Violation>),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed solution file {path}: {message}")]
    MalformedSolution { path: PathBuf, message: String },
}

impl Error {
    /// Whether the failure is numerical rather than a user error.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Overflow { .. }
                | Error::NonConvergence { .. }
                | Error::Cancellation { .. }
                | Error::QuadratureFailure { .. }
                | Error::PoleSearch { .. }
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// A single invariant violation found while validating a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl Violation {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
