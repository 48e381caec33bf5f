use thiserror::Error;

/// Errors raised by distribution construction and the bound evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("{what} out of domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("bound not applicable: {0}")]
    NotApplicable(String),

    #[error("infeasible point: {0}")]
    Infeasible(String),

    #[error("alphabet of size {size} exceeds the enumeration limit {limit}")]
    AlphabetTooLarge { size: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        what,
        detail: detail.into(),
    }
}

pub(crate) fn not_applicable(detail: impl Into<String>) -> Error {
    Error::NotApplicable(detail.into())
}
