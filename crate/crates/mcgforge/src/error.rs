use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("triangulation mismatch")]
    TriangulationMismatch,
    #[error("surface mismatch: {0}")]
    SurfaceMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("edge {0} is not flippable")]
    NotFlippable(usize),
    #[error("construction check failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
