use thiserror::Error;

/// Everything that can go wrong while building models or evaluating operators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dual number with vanishing body is not invertible")]
    NotInvertible,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("complex dimension {0} outside the supported range 1..={1}")]
    DimensionOutOfRange(usize, usize),
    #[error("linear system is singular")]
    Singular,
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("element is not a Lefschetz element: {0}")]
    NotLefschetz(String),
    #[error("form is not primitive")]
    NotPrimitive,
    #[error("form is not of pure type")]
    NotPureType,
    #[error("form is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("expected a form of bidegree (1,1)")]
    NotOneOne,
    #[error("form is not real")]
    NotReal,
    #[error("mode {0:?} lies outside the declared mode set")]
    ModeOverflow(Vec<i64>),
    #[error("invalid mode set: {0}")]
    InvalidModeSet(String),
    #[error("Laplacian block at mode {0:?} is not invertible")]
    SingularBlock(Vec<i64>),
    #[error("form is not harmonic")]
    NotHarmonic,
    #[error("form is not closed")]
    NotClosed,
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("input vanishes: {0}")]
    ZeroInput(String),
    #[error("bad harmonic basis: {0}")]
    BadBasis(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("index {index} out of range 1..={max} at {line}:{column}")]
    IndexOutOfRange {
        index: usize,
        max: usize,
        line: usize,
        column: usize,
    },
    #[error("expression error: {0}")]
    Expression(String),
    #[error("model descriptor error: {0}")]
    Descriptor(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
