use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size {n} outside the supported range 1..={cap}")]
    SizeLimit { n: usize, cap: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("partition is not non-crossing: {0}")]
    NotNonCrossing(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("word of length {len} exceeds degree cap {cap}")]
    DegreeOverflow { len: usize, cap: usize },

    #[error("table has no entry for word {0}")]
    MissingEntry(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{name}` is a {expected} variable but was tagged `{found}`")]
    SideMismatch {
        name: String,
        expected: &'static str,
        found: String,
    },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Fock truncation depth {depth} is below the required {required}")]
    DepthTooSmall { depth: usize, required: usize },

    #[error("jump law is not commutative: {0}")]
    NonCommuting(String),

    #[error("matrix size budget exceeded: {0}")]
    Budget(String),

    #[error("table parse error: {0}")]
    TableParse(String),
}

impl Error {
    /// Stable machine-readable code used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SizeLimit { .. } => "SIZE_LIMIT",
            Error::Shape(_) => "SHAPE",
            Error::NotNonCrossing(_) => "NOT_NON_CROSSING",
            Error::MalformedPartition(_) => "MALFORMED_PARTITION",
            Error::DegreeOverflow { .. } => "DEGREE_OVERFLOW",
            Error::MissingEntry(_) => "MISSING_ENTRY",
            Error::UnknownVariable(_) => "UNKNOWN_VARIABLE",
            Error::SideMismatch { .. } => "SIDE_MISMATCH",
            Error::AlphabetMismatch(_) => "ALPHABET_MISMATCH",
            Error::InvalidParameter(_) => "INVALID_PARAMETER",
            Error::DepthTooSmall { .. } => "DEPTH_TOO_SMALL",
            Error::NonCommuting(_) => "NON_COMMUTING",
            Error::Budget(_) => "BUDGET",
            Error::TableParse(_) => "TABLE_PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
