//! The max-plus semiring, vectors, matrices, and Kleene closures.

pub mod closure;
pub mod matrix;
pub mod scalar;
pub mod vector;

pub use closure::{kleene_plus, kleene_star, plus_column, star_column, star_row};
pub use matrix::{numbered_labels, TropicalMatrix};
pub use scalar::{oplus, otimes, NumericMode, Trop, FLOAT_TOL};
pub use vector::TropicalVector;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TropicalError {
    #[error("duplicate node label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid entry {value} at ({row}, {col}); inputs must be finite or -inf")]
    InvalidEntry { row: usize, col: usize, value: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands use different node label orders")]
    LabelMismatch,
    #[error("index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("unknown node `{0}`")]
    UnknownLabel(String),
}
