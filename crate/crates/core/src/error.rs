//! Error type shared by every evaluation routine.

use thiserror::Error;

use crate::series::SeriesResult;

/// Failure modes of the special-function kernels.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum PcfError {
    /// Input outside the mathematical domain (poles, non-finite values, bad orders).
    #[error("domain error: {0}")]
    Domain(String),

    /// Result or an intermediate would overflow, or the parameter is outside the supported range.
    #[error("range error: {0}")]
    Range(String),

    /// The requested method is not valid at this point (e.g. asymptotics at small x).
    #[error("regime error: {0}")]
    Regime(String),

    /// A power series did not meet its truncation rule within the term cap.
    #[error("series did not converge after {} terms", partial.terms_used)]
    Convergence { partial: Box<SeriesResult> },
}

pub type Result<T> = std::result::Result<T, PcfError>;

pub(crate) fn ensure_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(PcfError::Domain(format!("{name} must be finite, got {v}")))
    }
}
