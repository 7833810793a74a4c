//! Closed surfaces of genus `g ≥ 2` with a pants-adapted ideal
//! triangulation: combinatorics, Bonahon–Dreyer coordinates, developments
//! of a pants lift in double-double precision, and the pants flows
//! (eruption, internal bulging) computed both as truncated equivariant
//! products and through the unipotent closed form.

mod bd;
mod complex;
mod develop;
mod engine;
mod fan;
mod flow;
mod lift;
mod transverse;
mod unipotent;
mod word;

pub use bd::{
    bd_dimension, bd_to_json, boundary_log_eigen, numeric_rank, pants_coords, parse_bd,
    project_to_equalities, relation_matrix, validate_bd, BDCoords, CurveReport, PantsCoords,
    ValidationReport,
};
pub use complex::{build_surface, standard_gluing, Cuff, Curve, SurfaceComplex};
pub use develop::{
    develop, holonomy, ClosedSite, DevEdge, DevTriangle, Development, EdgeKind, LiftInfo,
};
pub use engine::{
    closed_edge_sigma_estimate, converge, truncated_equivariant_flow,
    truncated_equivariant_flow_with, Enumeration, PantsFlow, SiteConvergence,
};
pub use flow::{flow_coords, SurfaceFlow};
pub use lift::TriKind;
pub use transverse::{transverse_edge_set, TransverseEdgeSet};
pub use unipotent::unipotent_limit;
pub use word::Word;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] projcore::Error),
    #[error("invalid gluing: {0}")]
    InvalidGluing(String),
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coordinates rejected: {0}")]
    Invalid(String),
    #[error("no convergence: {0}")]
    ConvergenceFailure(String),
    #[error("outside the developed region: {0}")]
    OutOfDepth(String),
    #[error("spectral gap too small: {0:e}")]
    SpectralGapTooSmall(f64),
    #[error("map is not unipotent in the eigenbasis: {0}")]
    NotUnipotent(String),
    #[error("degenerate development: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
