//! Crate-wide error type.

/// Errors surfaced by the exact and numeric layers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Text input did not match the polynomial / catalog grammar.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A Gröbner basis run exceeded its S-polynomial reduction budget.
    #[error("reduction budget exhausted: {spent} S-polynomial reductions (budget {budget})")]
    Budget { budget: u64, spent: u64 },

    /// An operation that needs a proper ideal was handed the unit ideal.
    #[error("unit ideal: {0}")]
    UnitIdeal(String),

    /// An operation that needs homogeneous input was handed something else.
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    /// Division by zero in the coefficient field (e.g. a literal `p/0`,
    /// or a denominator that is 0 mod p).
    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    /// Geometric input violated a precondition (rank-deficient projection,
    /// center on the variety, non-finite cover, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Numeric path-tracking failed its tolerances even after reseeding.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Arguments outside the operation's domain (negative counts, wrong
    /// sizes, inconsistent invariants).
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
