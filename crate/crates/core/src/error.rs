use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, GemError>;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum GemError {
    /// Malformed input: wrong dimensions, out-of-range index, bad graph, ...
    InvalidArgument(String),
    /// An intermediate result left the finite `f64` range.
    NumericOverflow(String),
    /// The covariance matrix does not describe a physical (or pure) state.
    UnphysicalState {
        /// What was checked.
        what: &'static str,
        /// The offending value (residual or determinant).
        value: f64,
    },
    /// A ratio was requested whose denominator vanishes.
    DivisionByZero(String),
    /// A special function was evaluated at a pole.
    Divergence(String),
}

impl GemError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        GemError::InvalidArgument(msg.into())
    }
}

impl fmt::Display for GemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GemError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            GemError::NumericOverflow(msg) => write!(f, "numeric overflow: {msg}"),
            GemError::UnphysicalState { what, value } => {
                write!(f, "unphysical state: {what} (value {value:e})")
            }
            GemError::DivisionByZero(msg) => write!(f, "division by zero: {msg}"),
            GemError::Divergence(msg) => write!(f, "divergence: {msg}"),
        }
    }
}

impl core::error::Error for GemError {}
