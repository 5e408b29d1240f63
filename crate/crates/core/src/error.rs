use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relations contain a directed cycle through element {element}")]
    Cycle { element: usize },

    #[error("{what} is {actual}, which exceeds the limit of {limit}")]
    Size {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0} is empty")]
    Empty(&'static str),

    #[error("complex is not pure: facet sizes range from {min} to {max}")]
    Purity { min: usize, max: usize },

    #[error("{what} = {value} is outside {range}")]
    Range {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("invalid relation: {0}")]
    Relation(String),

    #[error("not applicable: {0}")]
    NotApplicable(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn size(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::Size {
            what,
            limit,
            actual,
        }
    }

    pub(crate) fn range(what: &'static str, value: i64, range: impl Into<String>) -> Self {
        Error::Range {
            what,
            value,
            range: range.into(),
        }
    }
}
