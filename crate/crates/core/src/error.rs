use thiserror::Error;

pub type Result<T> = std::result::Result<T, ProlateError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProlateError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("elliptic integral F(pi/2, 1) diverges")]
    Divergent,

    #[error(
        "spectrum did not converge after {doublings} truncation doublings \
         (last two iterates of chi_{n}: {previous} and {last})"
    )]
    NoConvergence {
        n: usize,
        doublings: usize,
        previous: f64,
        last: f64,
    },

    #[error("eigen-solver failed: {0}")]
    EigenSolver(String),

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("found {found} roots of {what}, expected {expected}")]
    RootCount {
        what: &'static str,
        found: usize,
        expected: usize,
    },

    #[error("all evaluation points for lambda_{0} are degenerate")]
    DegenerateEvaluation(usize),

    #[error("regime violation: {0}")]
    Regime(String),

    #[error("unknown identifier: {0}")]
    UnknownId(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for ProlateError {
    fn from(err: std::io::Error) -> Self {
        ProlateError::Io(err.to_string())
    }
}

impl From<csv::Error> for ProlateError {
    fn from(err: csv::Error) -> Self {
        ProlateError::Io(err.to_string())
    }
}
