use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("{what}: {needed} work units exceed budget {budget}")]
    BudgetExceeded { what: &'static str, needed: u128, budget: u128 },

    #[error("cyclotomic modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("group shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("root isolation incomplete: found {found} of {expected} roots")]
    Isolation { found: usize, expected: usize },
}

impl Error {
    /// Short machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::ModulusMismatch { .. } => "modulus_mismatch",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::InvalidPoset(_) => "invalid_poset",
            Error::Precondition(_) => "precondition",
            Error::Isolation { .. } => "isolation_incomplete",
        }
    }
}
