//! Error type shared by every module in the crate.

/// Errors reported by sieve construction, enumeration, and the numerical
/// evaluators.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Requested sieve limit exceeds the configured memory budget.
    #[error("sieve limit {limit} exceeds the memory budget of {budget} flag bits")]
    Capacity { limit: u64, budget: u64 },

    /// A sieve was supplied whose limit does not cover the required range.
    #[error("sieve covers b <= {have} but b <= {needed} is required")]
    SieveTooSmall { needed: u64, have: u64 },

    /// Riemann zeta evaluated at its pole.
    #[error("zeta has a pole at s = 1")]
    ZetaPole,

    /// An argument violated a precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A work or memory budget was exhausted; retry with looser tolerances.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Catastrophic cancellation detected in the smooth-weight evaluation.
    #[error("smooth weight unstable: {0}")]
    Instability(String),

    /// Adaptive quadrature failed to converge within its refinement budget.
    #[error("quadrature budget exceeded: {0}")]
    QuadratureBudget(String),

    /// A lemma's stated hypothesis does not hold for the given parameters.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Intermediate integer arithmetic overflowed 128 bits.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// A decimal string could not be parsed as an exact rational.
    #[error("invalid decimal: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
