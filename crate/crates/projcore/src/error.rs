use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("point is not incident to line (|l(p)| = {0:e})")]
    NotIncident(f64),
    #[error("point configuration is not in general position")]
    NotGeneric,
    #[error("flags are not transverse")]
    NotTransverse,
    #[error("auxiliary point lies on a flag line or on the join of the flag points")]
    DegeneratePoint,
    #[error("matrix is singular (normalized |det| = {0:e})")]
    Singular(f64),
    #[error("map is not loxodromic: {0}")]
    NotLoxodromic(String),
    #[error("spectral gap too small: {0:e}")]
    SpectralGapTooSmall(f64),
    #[error("bad tolerance override: {0}")]
    BadTolerance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
