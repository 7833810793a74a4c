//! Positive tuples of flags, nested polygon pairs, triangulations of the
//! labelled n-gon, and the σ/τ coordinates with their inverse.

pub mod attach;
mod coords;
pub mod io;
mod triangulation;
mod tuple;

pub use coords::{fg_coords, reconstruct, FGCoords};
pub use triangulation::Triangulation;
pub use tuple::{nested_polygons, nesting_parameters, validate_tuple, FlagTuple, PolygonPair};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] projcore::Error),
    #[error(transparent)]
    Invariants(#[from] invariants::Error),
    #[error("need at least 3 flags, got {0}")]
    TooFewFlags(usize),
    #[error("flags {0} and {1} are not transverse")]
    NotTransverse(usize, usize),
    #[error("triple ({0}, {1}, {2}) is not positive")]
    NotPositive(usize, usize, usize),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("triangulation has {tri} vertices but the tuple has {tuple} flags")]
    IncompatibleTriangulation { tri: usize, tuple: usize },
    #[error("missing coordinate: {0}")]
    MissingCoordinate(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// `(j - i) mod n`.
pub(crate) fn cyc(i: usize, j: usize, n: usize) -> usize {
    (j + n - i) % n
}

/// True when `k` lies strictly inside the cyclic arc from `i` to `j`.
pub fn in_arc(i: usize, k: usize, j: usize, n: usize) -> bool {
    let (a, b) = (cyc(i, k, n), cyc(i, j, n));
    a > 0 && a < b
}
