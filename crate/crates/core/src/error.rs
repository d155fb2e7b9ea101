//! Error type shared by every module of the crate.

/// Errors reported by exact-calculus operations.
///
/// All checks in this crate are exact; an `Error` always means the input was
/// structurally unusable (wrong chart, wrong arity, excluded point, ...) and
/// never a numerical tolerance problem.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("mismatched variable sets")]
    VarSetMismatch,
    #[error("mismatched charts")]
    ChartMismatch,
    #[error("expected {expected} items, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    DomainDenominator,
    #[error("point violates the chart domain: {0}")]
    DomainExcluded(String),
    #[error("not linear in the coordinates: {0}")]
    NotLinear(String),
    #[error("not constant: {0}")]
    NotConstant(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("not a subalgebra: {0}")]
    NotASubalgebra(String),
    #[error("ad-action is not proportional to the core volume: {0}")]
    NotProportional(String),
    #[error("form is not closed: {0}")]
    NotClosed(String),
    #[error("group axiom violated: {0}")]
    GroupAxiom(String),
    #[error("matrix is not a group element: {0}")]
    NotInGroup(String),
    #[error("matrix is not skew-Hermitian")]
    NotSkewHermitian,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
