use std::fmt;

use thiserror::Error;

use crate::freealg::Letter;

/// A parse failure with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, line: usize, column: usize) -> Self {
        ParseError {
            message: message.into(),
            line,
            column,
        }
    }
}

/// Why a matrix failed to have a polynomial inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotInvertibleReason {
    /// The constant term `M(0)` is singular over the coefficient field.
    SingularConstantTerm,
    /// A degree-preserving scalar image has a non-constant determinant.
    NonConstantDeterminant,
    /// The inverse series did not terminate within the degree cap.
    CapExhausted,
    /// The inverse series outgrew the term budget before reaching the cap.
    BudgetExhausted,
}

impl fmt::Display for NotInvertibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotInvertibleReason::SingularConstantTerm => "singular-constant-term",
            NotInvertibleReason::NonConstantDeterminant => "non-constant-determinant",
            NotInvertibleReason::CapExhausted => "cap-exhausted",
            NotInvertibleReason::BudgetExhausted => "budget-exhausted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("matrix has no polynomial inverse ({reason})")]
pub struct NotPolyInvertible {
    pub reason: NotInvertibleReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("letter {0} has no image under the substitution")]
    UnboundLetter(Letter),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("letter {letter} is outside the alphabet of size {size}")]
    LetterOutOfRange { letter: Letter, size: usize },
    #[error("matrix dimensions do not match: {0}")]
    Dimension(String),
    #[error("system is not proper algebraic: {0}")]
    ImproperSystem(String),
    #[error("linear part in z is singular")]
    SingularLinearPart,
    #[error("system has a nonzero constant term")]
    NonzeroConstant,
    #[error("system is not a hyporealization: {0}")]
    NotHyporealization(String),
    #[error("matrix tuples have different sizes")]
    SizeMismatch,
    #[error(transparent)]
    Parse(#[from] ParseError),
}
