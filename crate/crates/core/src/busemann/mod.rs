//! Busemann points of finite-dimensional normed spaces and the
//! Lax-Oleinik semigroup.
//!
//! Polyhedral norms are given by the extreme points `x'_i` of their dual
//! ball, `‖x‖ = max_i x'_i · x`. Every Busemann point is determined by a
//! proper face `J` of the dual ball and an offset `X`:
//! `w(x) = min_{j∈J} x'_j·(x − X) + max_{j∈J} x'_j·X`.

mod faces;
mod grid;
mod lagrangian;
mod lax;
mod norm;
mod point;

use thiserror::Error;

pub use faces::{enumerate_faces, face_from_direction, FaceEnumeration, FACE_TIE_TOL};
pub use grid::{GridFunction, GridSpec};
pub use lagrangian::{conjugate, theta, Lagrangian, LagrangianKind};
pub use lax::{
    eigen_characterization_check, eigen_check, eigenvector_from_measure, grid_error_bound,
    hopf_lax_apply, lax_star_asymptotics_check, search_radius, zeta_harmonicity_check,
    AsymptoticsReport, AsymptoticsRow, CharacterizationReport, EigenCheckReport, EigenFunction,
    HarmonicityReport,
};
pub use norm::{Norm, PolyhedralNorm};
pub use point::{ray_limit, BusemannPoint, NonexpansiveReport, RayLimit};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BusemannError {
    #[error("degenerate dual ball: {0}")]
    DegenerateDual(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("face must be nonempty")]
    EmptyFace,
    #[error("closed form and numeric ray limit differ by {gap} at {at:?}")]
    ConfirmationFailed { gap: f64, at: Vec<f64> },
    #[error("grid margin too small: no cell has a full search ball of radius {radius}")]
    MarginTooSmall { radius: f64 },
    #[error("the measure has no atoms")]
    EmptySupport,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("norm file: {0}")]
    NormFile(String),
    #[error("unknown norm {0}")]
    UnknownNorm(String),
}
