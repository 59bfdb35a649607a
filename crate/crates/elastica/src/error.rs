//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polygonal: {0}")]
    InvalidPolygonal(String),

    #[error("invalid curve spec: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("turning angle at vertex {index} equals pi; no tangent circle exists")]
    Cusp { index: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("root finding failed: {0}")]
    RootFind(String),

    #[error("quadrature failed to converge: {0}")]
    Quadrature(String),

    #[error("singular curvature weight: {0}")]
    SingularCurvature(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed CSV: {0}")]
    Csv(String),
}

impl Error {
    /// CLI exit-code category: `2` for malformed input, `1` for runtime
    /// failures and violated assertions.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidPolygonal(_)
            | Error::InvalidSpec(_)
            | Error::InvalidArgument(_)
            | Error::DimensionMismatch(_, _)
            | Error::OutOfRange(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::Csv(_) => 2,
            Error::Cusp { .. }
            | Error::RootFind(_)
            | Error::Quadrature(_)
            | Error::SingularCurvature(_) => 1,
        }
    }
}
