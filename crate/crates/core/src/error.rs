use alloc::string::String;

/// Errors reported by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structured set or point set violates its invariants.
    #[error("invalid set: {0}")]
    InvalidSet(String),
    /// An exhaustive oracle would exceed its configured budget.
    #[error("budget exceeded: {what} is {got}, limit {limit}")]
    Budget {
        /// Which budget was exceeded.
        what: &'static str,
        /// Requested size.
        got: usize,
        /// Configured limit.
        limit: usize,
    },
    /// An iterative solver stopped before certifying its tolerance. The best
    /// bracket found is carried along so callers can still use it.
    #[error("{solver} did not converge after {iterations} iterations: bracket [{lower}, {upper}]")]
    NonConvergence {
        /// Solver name.
        solver: &'static str,
        /// Iterations performed.
        iterations: usize,
        /// Best certified lower bound.
        lower: f64,
        /// Best primal value.
        upper: f64,
    },
    /// Malformed set expression.
    #[error("parse error at {position}: {message}")]
    Parse {
        /// Byte offset into the input.
        position: usize,
        /// What went wrong.
        message: String,
    },
    /// The Hausdorff modulus has no closed form here.
    #[error("no closed form for the {0} modulus")]
    NoClosedForm(&'static str),
}

/// Result alias for this crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::Error::Domain(alloc::format!($($arg)*))
    };
}
pub(crate) use domain;
