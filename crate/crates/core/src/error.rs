use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input violates a documented precondition.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A text input (dataset, table) failed to parse.
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    /// All design points coincide; the slope is not identifiable and the
    /// design criterion is infinite.
    #[error("singular design: fewer than two distinct x values")]
    SingularDesign,

    /// The fitted intercept is exactly zero, so the slope/intercept ratio
    /// does not exist.
    #[error("degenerate intercept: fitted b0 is exactly zero")]
    DegenerateIntercept,

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Parse { .. } | Error::SingularDesign | Error::Io(_) => 2,
            Error::DegenerateIntercept | Error::Numeric(_) => 3,
        }
    }
}
