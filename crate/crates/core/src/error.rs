use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated a domain invariant (e.g. `0 < a < b`, `1 < σ ≤ 2`).
    #[error("domain error: {0}")]
    Domain(String),
    /// A sampled function does not live on the grid an operator was built for.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    /// The forcing term could not be evaluated, or produced a non-finite value.
    #[error("evaluation error at x = {x}, u = {u}: {message}")]
    Evaluation { x: f64, u: f64, message: String },
    /// The two algebraically equivalent uniqueness tests disagreed outside the tie zone.
    #[error("inconsistent certificate: {0}")]
    InconsistentCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
