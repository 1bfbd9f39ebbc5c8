use thiserror::Error;

/// Errors produced by the field, linear-algebra, code and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power in the supported range 2..=65536")]
    NotPrimePower(u64),

    #[error("division by zero in F_{q}")]
    DivisionByZero { q: u32 },

    #[error("mixed fields: F_{left} and F_{right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    /// A cross-check between two independent computations failed. This
    /// signals a bug, never a property of the input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("enumeration needs {needed} messages but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
