use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division is not exact in Z[v^±1, q^±1]")]
    NonExactDivision,

    #[error("element is not {m}-symmetric: {detail}")]
    MSymmetryViolation { m: usize, detail: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("rank {rank} is too small (need at least {needed})")]
    RankTooSmall { rank: usize, needed: usize },

    #[error("operator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors that indicate a bug or a broken theorem rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonExactDivision | Error::MSymmetryViolation { .. } | Error::Consistency(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
