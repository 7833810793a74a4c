//! Homogeneous coordinates on the real projective plane.
//!
//! Points and lines are kept as canonical representatives (unit norm,
//! last nonzero entry positive); maps are kept with unit Frobenius norm
//! and positive determinant. The [`real`] and [`linalg`] modules are
//! generic so the same formulas can run in double-double precision.

pub mod eigen;
pub mod error;
pub mod geom;
pub mod linalg;
pub mod map;
pub mod real;
pub mod tol;

pub use eigen::{eigen_decompose, eigen_flags, Eigen, EigenFlags};
pub use error::{Error, Result};
pub use geom::{join, meet, Flag, ProjLine, ProjPoint};
pub use map::{map_from_flag_data, map_from_points, ProjMap};
pub use real::{Dd, Real};
pub use tol::{set_tolerances, tol, Tolerances};
