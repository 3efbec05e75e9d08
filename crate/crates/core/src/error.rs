use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// An exact computation would exceed its enumeration or search budget.
    #[error("resource limit: {what} needs {required}, cap is {cap}")]
    ResourceLimit {
        what: String,
        required: u64,
        cap: u64,
    },

    #[error("resolution {resolution} is below the largest support index {required}")]
    Resolution { resolution: u32, required: u32 },

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn limit(what: impl Into<String>, required: u64, cap: u64) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            required,
            cap,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
