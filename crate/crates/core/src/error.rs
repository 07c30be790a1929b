use thiserror::Error;

/// Errors raised by the interference, simulation and link-model routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("path-loss exponent must exceed 2 (got {0})")]
    EtaTooSmall(f64),

    /// An argument fell outside the interval where a formula is defined.
    #[error("{what} = {value} is outside the valid domain: requires {bound}")]
    Domain {
        what: &'static str,
        value: f64,
        bound: String,
    },

    /// The evaluation point sits exactly on a base station; the caller
    /// should draw a new point.
    #[error("point coincides with base station {index}; resample required")]
    CoincidentWithBs { index: usize },

    #[error("singular SINR: interference-plus-noise denominator is zero")]
    SingularSinr,

    #[error("useful signal {signal} exceeds total own-cell power {internal}")]
    InvalidDecomposition { signal: f64, internal: f64 },

    /// Downlink load reached or exceeded the pole capacity.
    #[error("infeasible cell: load {load} >= 1")]
    Infeasible { load: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
