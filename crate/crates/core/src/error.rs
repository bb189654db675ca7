use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree must be positive")]
    EmptyDegree,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the configured maximum {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element is not contained in the group: {0}")]
    NotInGroup(String),
    #[error("{what}: order {order} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        order: String,
        cap: u64,
    },
    #[error("undecidable at configured scale: {0}")]
    Undecidable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures caused by the configured scale limits rather than bad input.
    pub fn is_scale(&self) -> bool {
        matches!(
            self,
            Error::DegreeCap { .. }
                | Error::CapExceeded { .. }
                | Error::Undecidable(_)
                | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
