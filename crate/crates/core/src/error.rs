//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on the input domain was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature failed to converge within the configured budget.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// A denominator came too close to a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// Two truncated series of different orders were combined.
    #[error("series order mismatch: {lhs} vs {rhs}")]
    OrderMismatch { lhs: usize, rhs: usize },

    /// Series inversion requires a constant term of +1 or -1.
    #[error("series constant term is not a unit (+1/-1)")]
    NonUnit,

    /// A (tag, representation) pair with no defining formula was requested.
    #[error("function {tag} has no {representation} representation")]
    UnsupportedRepresentation { tag: String, representation: String },

    /// Unknown identity name passed to the registry.
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
