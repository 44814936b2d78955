use thiserror::Error;

use crate::exact::Field;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("mixed fields: {left} and {right}")]
    MixedFields { left: Field, right: Field },

    #[error("{0} is not an odd prime below 2^31")]
    InvalidModulus(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("characteristic {p} must exceed {bound}")]
    CharacteristicTooSmall { p: u64, bound: u64 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial is not a linear form")]
    NotLinear,

    #[error("zero polynomial where a nonzero form is required")]
    ZeroForm,

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("point set contains a zero vector")]
    ZeroPoint,

    #[error("point set contains a repeated point")]
    RepeatedPoint,

    #[error("socle not 1-dimensional (annihilator has dimension {0})")]
    SocleNotOneDimensional(usize),

    #[error("Hilbert function precondition violated: expected {expected}, found {found}")]
    HilbertFunctionMismatch { expected: String, found: String },

    #[error("points are not apolar in degree {0}")]
    NotApolar(usize),

    #[error("strand budget exceeded: {entries} matrix entries > {budget}; use an Artinian reduction")]
    BudgetExceeded { entries: usize, budget: usize },

    #[error("table inconsistent with codimension {0}")]
    TableInconsistent(usize),

    #[error("base point: all ten quadrics vanish")]
    BasePoint,

    #[error("section not general: {0}")]
    SectionNotGeneral(String),

    #[error("retries exhausted after {0} attempts")]
    RetriesExhausted(usize),

    #[error("field too large for exhaustive search: {0}")]
    FieldTooLarge(u64),

    #[error("operation requires {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
