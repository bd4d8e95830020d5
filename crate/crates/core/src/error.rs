use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
///
/// Structural misuse (adding multivectors of different dimensions, mixing
/// elements of unrelated symbol tables in unchecked arithmetic) panics
/// instead; these variants cover the domain-level failure modes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero or by a zero divisor")]
    DivisionByZero,
    #[error("operands belong to different coefficient rings: {0}")]
    MixedRings(String),
    #[error("binding violates the declared constraint for `{0}`")]
    InconsistentBinding(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not square")]
    NonSquare,
    #[error("matrix is not symmetric within tolerance")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("grade {0} out of range for dimension {1}")]
    InvalidGrade(usize, usize),
    #[error("the symmetric part of the form is degenerate")]
    DegenerateMetric,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element does not lie in the span of the requested basis")]
    NotInSpan,
    #[error("coefficient of `{0}` has degree >= 2 in the unknowns")]
    NonlinearInParams(String),
    #[error("system is outside the supported linear/quadratic shapes")]
    UnsupportedSystem,
    #[error("no element satisfies the requested equations")]
    NoSolution,
    #[error("signature ({0},{1}) is not supported here")]
    UnsupportedSignature(u32, u32),
    #[error("no suitable signature available for a {0}x{0} embedding")]
    SignatureUnavailable(usize),
    #[error("element cannot be represented in the spinor basis")]
    NotRepresentable,
    #[error("{0} is not an eigenvalue (only the trivial solution)")]
    NotAnEigenvalue(String),
    #[error("axis vector must be non-zero")]
    ZeroAxis,
    #[error("sample lies outside the admissible region")]
    OutOfBall,
    #[error("expected a pure grade-1 vector")]
    NotAVector,
    #[error("bad operand shape: {0}")]
    BadShape(String),
    #[error("numerical iteration failed to converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
