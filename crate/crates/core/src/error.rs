use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("degenerate polygon: symmetrized area is zero")]
    DegeneratePolygon,
    #[error("invalid line: {0}")]
    InvalidLine(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
}

impl Error {
    /// Stable machine-readable tag, used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPolygon(_) => "invalid_polygon",
            Error::DegeneratePolygon => "degenerate_polygon",
            Error::InvalidLine(_) => "invalid_line",
            Error::Unsupported(_) => "unsupported",
            Error::Domain(_) => "domain",
            Error::InsufficientSamples(_) => "insufficient_samples",
        }
    }
}
