//! Projective invariants of flags: cross ratio, triple ratio, the
//! cevian frame of a positive flag triple and the Hilbert metric of a
//! convex polygon.

mod chart;
mod frame;
mod hilbert;
mod ratios;

pub use chart::{positive_chart, AffineChart};
pub use frame::{triangle_frame, TriangleFrame};
pub use hilbert::{hilbert_distance, ConvexPolygonDomain};
pub use projcore::Flag;
pub use ratios::{
    cross_ratio, cross_ratio_collinear, cross_ratio_collinear_via, cross_ratio_raw, triple_ratio,
    triple_ratio_raw, Arg,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] projcore::Error),
    #[error("lines are not concurrent")]
    NotConcurrent,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("flags are not transverse")]
    NotTransverse,
    #[error("triple is not positive (triple ratio {0:e})")]
    NotPositive(f64),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("point outside the domain")]
    PointOutsideDomain,
    #[error("polygon is not convex: {0}")]
    NonConvexInput(String),
    #[error("no affine chart contains the configuration")]
    ChartFailure,
}

pub type Result<T> = std::result::Result<T, Error>;
