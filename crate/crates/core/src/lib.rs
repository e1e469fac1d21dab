//! Max-plus potential theory on finite and structured infinite kernels.
//!
//! * [`tropical`] — the semiring, matrices and Kleene closures;
//! * [`spectral`] — maximal circuit mean and recurrence classes;
//! * [`martin`] — Martin kernels, minimal Martin space, representing measures;
//! * [`boundary`] — truncations of infinite kernels, almost-geodesics and
//!   numerical boundary points;
//! * [`busemann`] — Busemann points of normed spaces and Lax-Oleinik eigenvectors;
//! * [`cli`] — the `maxplus` command-line front end.
//!
//! Runnable walkthroughs live in `examples/` (`cargo run --example kleene_closure`).

pub mod boundary;
pub mod busemann;
pub mod cli;
pub mod martin;
pub mod spectral;
pub mod tropical;
pub mod util;

pub use tropical::{NumericMode, Trop, TropicalMatrix, TropicalVector};
