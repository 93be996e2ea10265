//! Error type shared across the crate.

/// Crate-wide error type.
///
/// The variants correspond to the distinct failure categories of the
/// public API: contract violations (mismatched operands), domain errors
/// (inputs outside an operation's mathematical domain), capacity errors
/// (a requested construction exceeds the configured size budget),
/// precondition errors, and internal invariant violations (which indicate
/// a bug and must never fire on valid inputs).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Operands disagree on modulus or dimension.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Input lies outside the operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A construction would exceed the configured size budget.
    #[error("capacity exceeded: {required} vertices requested, budget is {budget}")]
    Capacity { required: u128, budget: u64 },

    /// A stated precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An invariant the implementation guarantees was violated.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
