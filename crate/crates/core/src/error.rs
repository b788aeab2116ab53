use thiserror::Error;

/// Errors raised by series construction, fitting and the segmenters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The input points violate a [`TimeSeries`](crate::TimeSeries) invariant.
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    /// An argument is out of its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The regressor budget cannot accommodate even the smallest model.
    #[error("infeasible budget: {0}")]
    InfeasibleBudget(String),
    /// The normal equations could not be solved.
    #[error("singular normal system over [{start}, {end}) at degree {degree}")]
    Singular {
        start: usize,
        end: usize,
        degree: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn invalid_series(msg: impl Into<String>) -> Self {
        Error::InvalidSeries(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::InfeasibleBudget(msg.into())
    }
}
