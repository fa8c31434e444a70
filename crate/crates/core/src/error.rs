use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("zeta({sigma} + {t}i) is within {radius:e} of the pole at s = 1")]
    PoleProximity { sigma: f64, t: f64, radius: f64 },

    #[error("phase accuracy cannot be guaranteed at t = {t:e} (limit {limit:e})")]
    PrecisionExhausted { t: f64, limit: f64 },

    #[error(
        "zero count audit failed on ({t0}, {t1}]: found {found}, expected {expected} \
         after {refinements} grid refinements"
    )]
    AuditFailure {
        t0: f64,
        t1: f64,
        found: i64,
        expected: i64,
        refinements: u32,
    },

    #[error("derivative signs fail to alternate between zeros at {left} and {right}")]
    AlternationViolation { left: f64, right: f64 },

    #[error("mollifier length X = {0} must exceed 1")]
    DegenerateLength(f64),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }

    /// Domain errors are failures of the computation itself, as opposed to
    /// bad input.
    pub fn is_domain_error(&self) -> bool {
        !matches!(
            self,
            Error::InvalidArgument { .. } | Error::DegenerateLength(_)
        )
    }
}
