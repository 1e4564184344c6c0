//! Library error type.

use thiserror::Error;

/// Errors surfaced by the numerical kernels.
///
/// Numerical non-convergence is generally reported in-band (flags on result
/// structs) so callers can decide; hard errors are reserved for conditions
/// that make a result meaningless (NaN at a quadrature node, invalid
/// truncation sizes, malformed inputs).
#[derive(Debug, Error)]
pub enum Error {
    /// An integrand produced a non-finite value at a node outside every
    /// exclusion disk. The offending node is named so the caller can tell
    /// a genuine pole from a programming error.
    #[error("integrand not finite at node β = {re:+.6e}{im:+.6e}i")]
    NanAtNode { re: f64, im: f64 },

    /// A truncation or order parameter was out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Mismatched dimensions between operands.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An iterative solver failed to converge within its budget.
    #[error("iteration failed to converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
