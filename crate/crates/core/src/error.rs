use thiserror::Error;

/// Errors raised across the library.
///
/// Moment or index non-existence is not an error; see [`crate::Quantity`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{routine} did not converge: {detail}")]
    NonConvergence {
        routine: &'static str,
        detail: String,
    },

    #[error("{routine} diverges: {detail}")]
    Divergence {
        routine: &'static str,
        detail: String,
    },

    #[error("{family} has no power-law tail")]
    NoPowerTail { family: &'static str },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("SDE integration unstable: positivity guard fired on {rate:.4} of steps")]
    Instability { rate: f64 },
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }

    /// True for failures caused by the input data or parameters rather than by
    /// a numerical routine.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. }
                | Error::InvalidParameter { .. }
                | Error::DegenerateSample(_)
                | Error::InvalidConfig(_)
                | Error::NoPowerTail { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
