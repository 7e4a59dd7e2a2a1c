use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("cannot parse scalar {input:?}: {message}")]
    Scalar { input: String, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("duplicate structure constant for ({i}, {j}, {k})")]
    DuplicateEntry { i: usize, j: usize, k: usize },

    #[error("structure constant ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },

    #[error("structure constant ({i}, {j}, {k}) has zero coefficient")]
    ZeroCoefficient { i: usize, j: usize, k: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A hypothesis of a construction fails; `clause` names it.
    #[error("{clause}: {detail}")]
    Hypothesis { clause: String, detail: String },

    #[error("enumeration of {size} elements exceeds the bound {bound}")]
    TooLarge { size: u128, bound: u128 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn hypothesis(clause: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            clause: clause.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn precondition(detail: impl Into<String>) -> Self {
        Error::Precondition(detail.into())
    }
}
