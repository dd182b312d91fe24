use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("{what} needs {needed} items, cap is {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },

    #[error("{operation} requires a binary code (p = 2, m = 1), got p = {p}, m = {m}")]
    WrongCharacteristic { operation: &'static str, p: u32, m: usize },

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short stable identifier used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid_field",
            Error::InvalidCode(_) => "invalid_code",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::WrongCharacteristic { .. } => "wrong_characteristic",
            Error::ParameterMismatch(_) => "parameter_mismatch",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::Parse(_) => "parse_error",
            Error::Json(_) => "json_error",
        }
    }
}
