use thiserror::Error;

/// Errors raised by the numerical kernels and the identity checker.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters are well-formed but the requested formula does not apply to them.
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    /// A power series hit its term cap before meeting the stopping rule.
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    QuadratureNonConvergence { tol: f64, estimate: f64 },

    /// An iteration exceeded its step cap.
    #[error("iteration cap of {0} steps exceeded")]
    IterationCap(usize),

    /// A computed quantity violates an identity it must satisfy.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    /// Matrix inversion over Z[i] needs a unit determinant.
    #[error("determinant {0} is not a unit of Z[i]")]
    NonUnitDeterminant(String),

    /// Denominator of a Moebius map vanishes at the given point.
    #[error("pole of the Moebius map")]
    Pole,

    /// Entries of a normalized matrix have the wrong parity for the character.
    #[error("parity violation: {0}")]
    Parity(String),

    /// The root finder could not bracket a sign change.
    #[error("root not bracketed: {0}")]
    RootNotBracketed(String),

    /// Exact integer arithmetic overflowed 64 bits.
    #[error("integer overflow in exact Gaussian-integer arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
