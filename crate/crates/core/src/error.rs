//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("negative exponent evaluated at a zero coordinate")]
    DivisionByZero,
    #[error("singular matrix (pivot below threshold at column {column})")]
    SingularMatrix { column: usize },
    #[error("integer matrix is singular over the rationals")]
    SingularLattice,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("system is not square ({rows} equations in {cols} variables)")]
    NotSquare { rows: usize, cols: usize },
    #[error("system is already square; squaring up needs more equations than variables")]
    AlreadySquare,
    #[error("genuinely Laurent input (negative exponents); use the polyhedral solver")]
    LaurentUnsupported,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyhedralError {
    #[error("lifting produced a tie in the minimality check; resample")]
    NonGenericLifting,
    #[error("no generic lifting found after {attempts} attempts")]
    GenericityExhausted { attempts: usize },
    #[error("support sets do not define a finite mixed volume")]
    DegenerateSupports,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("interval division by an interval containing zero")]
    IntervalDivisionByZero,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NagError {
    #[error("a path failed while moving a witness set")]
    PathFailure,
    #[error("loop/merge budget exhausted before every part passed the trace test")]
    Inconclusive,
    #[error("monodromy stalled at {found} solutions before reaching the requested {requested}")]
    StalledBeforeCount { requested: usize, found: usize },
    #[error("family evaluation is not affine-linear in the parameters")]
    NotLinearInParameters,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchError {
    #[error("graph must be connected")]
    Disconnected,
    #[error("sampled configuration is degenerate; resample with another seed")]
    DegenerateConfiguration,
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
}

/// Parse error with 1-based line/column position.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("parse error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
