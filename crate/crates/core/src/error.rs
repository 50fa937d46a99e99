use thiserror::Error;

/// Errors raised by the kernel and the CLI front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid algebra spec `{0}`: {1}")]
    InvalidAlgebra(String, String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("critical level: Sugawara undefined at k = -h^vee")]
    CriticalLevel,

    #[error("critical level k = -h^vee: singular-vector images can vanish here; run the `critical` command instead")]
    CriticalRefused,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("level {0} is not critical")]
    NotCritical(String),

    #[error("zero vector has no {0}")]
    ZeroVector(&'static str),

    #[error("mode {0} is negative; negative modes act by multiplication")]
    NegativeMode(i64),

    #[error("element is not nilpotent")]
    NotNilpotent,

    #[error("zero element has no triple")]
    ZeroNilpotent,

    #[error("no sl2-triple through the given element")]
    NoTriple,

    #[error("contraction parameter t must be nonzero")]
    ZeroParameter,

    #[error("index {index} out of range for {what} (size {size})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("level mismatch between vectors")]
    LevelMismatch,

    #[error("{0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
