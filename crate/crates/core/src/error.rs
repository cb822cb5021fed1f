use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps the first group (bad input) to exit code 2 and the second
/// group (a failed construction or verification) to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported n = {0}: expected an odd integer with 5 <= n <= {max}", max = crate::MAX_N)]
    UnsupportedN(u32),

    #[error("field context mismatch: n = {left} vs n = {right}")]
    ContextMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::UnsupportedN(_)
                | Error::ContextMismatch { .. }
                | Error::DivisionByZero
                | Error::Parse(_)
                | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
