use thiserror::Error;

/// Errors raised by the simulation paths.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unsupported photon statistics: {0}")]
    UnsupportedStatistics(String),

    #[error("unsupported photon number {0}: exact Fock computations cover n = 1, 2, 3")]
    UnsupportedOrder(usize),

    #[error("grid too coarse: {detail} (suggested minimum: {suggestion})")]
    Resolution { detail: String, suggestion: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("collision bin too coarse: |alpha_n|^2 = {weight:.3e} exceeds {limit}")]
    BinTooCoarse { weight: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
