use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed number literal `{0}`")]
    BadLiteral(String),

    #[error("ambient mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: String, found: String },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("cannot concatenate: first path ends at {end}, second starts at {start}")]
    EndpointMismatch { end: String, start: String },

    #[error("reparameterization is not a non-decreasing self-map of [0,1] (segment {segment}: {reason})")]
    NotMonotone { segment: usize, reason: String },

    #[error("parameter {0} outside [0,1]")]
    ParameterOutOfRange(String),

    #[error("empty or inverted interval [{lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("invalid test function: {0}")]
    InvalidFunction(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("space `{0}` has no generator family")]
    MissingGenerators(String),

    #[error("space `{0}` has no path predicate")]
    MissingPredicate(String),

    #[error("unsupported construction: {0}")]
    Unsupported(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("fixture `{0}` is documentation-only (non-PL predicate)")]
    DocumentationOnly(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
