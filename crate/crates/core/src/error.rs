use thiserror::Error;

/// Errors raised by the harmonic-integral toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A cosine modulation was applied to a polynomial whose frequencies do
    /// not share the parity of the modulating frequency.
    #[error("parity mismatch: frequency {frequency} has parity different from modulation mu = {mu}")]
    Parity { frequency: u64, mu: i64 },

    /// Parameters outside the domain on which an integral form is valid.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An enumeration would visit more states than the configured budget.
    #[error("budget exceeded: enumeration needs more than {budget} states")]
    BudgetExceeded { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
