//! Numerical boundary exploration for infinite kernels given by rules.
//!
//! An infinite kernel is a [`KernelRule`]; it is only ever touched through
//! finite [`BallTruncation`]s. Boundary points are approximated by
//! [`column_limit`]s of Martin-kernel columns along target sequences.

mod eigen;
mod fixtures;
mod geodesic;
mod limit;
mod rule;
mod rules;
mod targets;
mod truncation;

use thiserror::Error;

use crate::tropical::TropicalError;

pub use eigen::{construct_eigenvector, eigen_residual, estimate_rho, WindowEigenvector};
pub use fixtures::{fixture_suite, FixtureReport, FixtureResult};
pub use geodesic::{
    almost_geodesic_check, rieffel_check, tail_restart, GeodesicReport, Potential, RieffelReport,
};
pub use limit::{
    column_limit, estimate_columns, h_flat_self, kernel_column, window_nodes, BoundaryEstimate,
    HFlatEstimate, ARTIFACT_PROBE, CAUCHY_SPAN, TRUNCATION_MARGIN,
};
pub use rule::{format_coord, parse_coord, Coord, KernelRule, ShiftedRule};
pub use rules::{
    rule_by_name, triangle_phi, Example1Rule, FileRule, HedgehogRule, NonTightRule, TriangleRule,
    TripodRule, Z2Rule, ZRule,
};
pub use targets::TargetExpr;
pub use truncation::{truncate, truncate_with_cap, BallTruncation, DEFAULT_NODE_CAP};

#[derive(Debug, Error)]
pub enum BoundaryError {
    #[error("ball of radius {radius} has more than {cap} nodes")]
    BallTooLarge { radius: i64, cap: usize },
    #[error("radius must be at least {min}, got {radius}")]
    InvalidRadius { radius: i64, min: i64 },
    #[error("column limit did not converge: residual {residual} > tol {tol}")]
    NotConverged { residual: f64, tol: f64 },
    #[error("window values move by {gap} when the truncation grows from {radius} to {probe}")]
    TruncationArtifact { radius: i64, probe: i64, gap: f64 },
    #[error("probe sequence {probe} converges to a different point (gap {gap})")]
    InconsistentProbes { probe: usize, gap: f64 },
    #[error("not a path: no arc {from} -> {to}")]
    NotAPath { from: String, to: String },
    #[error("rule {0} is not flagged symmetric, so -A* is not a metric")]
    NotMetric(String),
    #[error("alpha must be >= 0, got {0}")]
    InvalidAlpha(f64),
    #[error("lambda {lambda} lies below the spectral radius estimate {rho}")]
    BelowSpectralRadius { lambda: f64, rho: f64 },
    #[error("eigen-relation fails at {node}: residual {residual}")]
    EigenCheckFailed { node: String, residual: f64 },
    #[error("node {0} is outside the window")]
    NodeOutsideWindow(String),
    #[error("need at least {needed} targets, got {got}")]
    TooFewTargets { needed: usize, got: usize },
    #[error("targets never leave the window (last target has level {level} <= {window})")]
    TargetsDoNotEscape { level: i64, window: i64 },
    #[error("node {0} is not in the kernel")]
    UnknownNode(String),
    #[error("unknown rule {0}")]
    UnknownRule(String),
    #[error("rule file: {0}")]
    RuleFile(String),
    #[error("target expression: {0}")]
    TargetSyntax(String),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}
