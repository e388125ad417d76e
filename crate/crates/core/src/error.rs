use thiserror::Error;

/// Errors returned by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("unsupported Bessel order {0} (integer orders need bessel_jy)")]
    UnsupportedOrder(f64),
    #[error("unsupported channel: {0}")]
    UnsupportedChannel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("scattering matrix is not unitary (deviation {0:.3e})")]
    NonUnitary(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
