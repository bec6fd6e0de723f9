use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Exact polynomial division left a nonzero remainder.
    #[error("polynomial division is not exact: remainder {remainder}")]
    NotDivisible { remainder: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("expansion exceeded the term cap of {cap} terms")]
    TermCapExceeded { cap: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("inadmissible indices: {0}")]
    InvalidIndices(String),

    /// A classical closed form that should be an integer reduced to a proper fraction.
    #[error("closed form is not integral: {0}")]
    NonIntegral(String),

    #[error("exponent {name} evaluated to {value} < 0")]
    NegativeExponent { name: &'static str, value: i64 },

    #[error("identity id {0} is out of range 1..=9")]
    UnknownIdentity(u8),
}

pub type Result<T> = std::result::Result<T, Error>;
