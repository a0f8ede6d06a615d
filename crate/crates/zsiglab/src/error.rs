//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero element has no factorization or valuation")]
    ZeroElement,
    #[error("zero integer cannot be factored")]
    ZeroInput,
    #[error("every tuple coordinate is zero")]
    AllZero,
    #[error("iterate f^{level}(alpha) is zero")]
    ZeroIterate { level: usize },
    #[error("factorization budget exceeded on a {digits}-digit operand")]
    BudgetExceeded { digits: usize },
    #[error("operand exceeded the digit cap at orbit level {level}")]
    OperandOverflow { level: usize },
    #[error("symbolic expansion of f^{iterate} exceeds the coefficient cap for degree {degree}")]
    ExpansionCap { degree: u32, iterate: u32 },
    #[error("operation requires degree {expected}, map has degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("degenerate abc triple at level {level}: {part} vanishes")]
    DegenerateTriple { level: usize, part: &'static str },
    #[error("base polynomial is post-critically finite (or undecided), family member undefined")]
    PCFBase,
    #[error("witness curve has vanishing discriminant")]
    DegenerateDiscriminant,
    #[error("base polynomial is reducible, splitting tower is degenerate")]
    ReducibleBase,
    #[error("orbit start is preperiodic; an infinite forward orbit is required")]
    PreperiodicOrbit,
    #[error("field is not supported: {reason}")]
    UnsupportedField { reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
