use serde::Serialize;

use super::limit::column_limit;
use super::rule::{Coord, KernelRule, ShiftedRule};
use super::truncation::truncate;
use super::BoundaryError;
use crate::spectral::max_circuit_mean;

/// Radius of the ball on which `ρ(A)` is estimated.
pub const RHO_RADIUS: i64 = 12;

#[derive(Debug, Clone, Serialize)]
pub struct WindowEigenvector {
    pub lambda: f64,
    pub rho_estimate: f64,
    pub window: Vec<Coord>,
    pub labels: Vec<String>,
    pub values: Vec<f64>,
    /// Nodes of level at most this satisfy `(Au)_x = λ + u_x` within tol.
    pub inner_radius: i64,
    pub residual: f64,
}

impl WindowEigenvector {
    pub fn value_at(&self, x: &Coord) -> Option<f64> {
        self.window.iter().position(|w| w == x).map(|i| self.values[i])
    }
}

/// Maximal circuit mean of the truncation of the given radius.
pub fn estimate_rho(rule: &dyn KernelRule, radius: i64) -> Result<f64, BoundaryError> {
    Ok(max_circuit_mean(truncate(rule, radius)?.matrix()).value())
}

/// Worst `|(Au)_x − λ − u_x|` over window nodes of level ≤ `inner_radius`,
/// with its node. Arcs are cut at the outer edge of the window.
pub fn eigen_residual(
    rule: &dyn KernelRule,
    window: &[Coord],
    values: &[f64],
    lambda: f64,
    inner_radius: i64,
) -> (f64, Option<Coord>) {
    let outer = window.iter().map(|x| rule.level(x)).max().unwrap_or(0);
    let at = |y: &Coord| window.iter().position(|w| w == y).map(|i| values[i]);
    let mut worst = (0.0, None);
    for (x, ux) in window.iter().zip(values) {
        if rule.level(x) > inner_radius {
            continue;
        }
        let au = rule
            .neighbors(x, outer)
            .iter()
            .filter_map(|(y, w)| at(y).map(|uy| w + uy))
            .fold(f64::NEG_INFINITY, f64::max);
        let r = (au - lambda - ux).abs();
        if r > worst.0 || (r.is_nan() && worst.1.is_none()) {
            worst = (r, Some(x.clone()));
        }
    }
    worst
}

/// A right eigenvector `Au = λu` on a window, as the boundary limit of the
/// Martin kernel of `λ⁻¹A` along `ray`. The eigen-relation is verified on
/// the nodes of level ≤ `window_radius`; the limit itself is taken on a
/// window one level larger.
pub fn construct_eigenvector(
    rule: &dyn KernelRule,
    lambda: f64,
    window_radius: i64,
    ray: &[Coord],
    tol: f64,
) -> Result<WindowEigenvector, BoundaryError> {
    let rho = estimate_rho(rule, RHO_RADIUS.min(window_radius + 8).max(2))?;
    if lambda < rho - tol {
        return Err(BoundaryError::BelowSpectralRadius { lambda, rho });
    }
    let shifted = ShiftedRule { inner: rule, lambda };
    let est = column_limit(&shifted, ray, window_radius + 1, tol, None)?;
    let (residual, node) = eigen_residual(rule, &est.window, &est.values, lambda, window_radius);
    if residual > tol || residual.is_nan() {
        return Err(BoundaryError::EigenCheckFailed {
            node: node.map(|x| rule.label(&x)).unwrap_or_default(),
            residual,
        });
    }
    Ok(WindowEigenvector {
        lambda,
        rho_estimate: rho,
        window: est.window,
        labels: est.labels,
        values: est.values,
        inner_radius: window_radius,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::rules::{Example1Rule, NonTightRule, ZRule};

    fn ray(n: i64) -> Vec<Coord> {
        (1..=n).map(|k| vec![k]).collect()
    }

    #[test]
    fn z_eigenvalue_range() {
        for (lambda, slope) in [(-1.0, 0.0), (-0.5, 0.5), (0.0, 1.0), (1.0, 2.0)] {
            let u = construct_eigenvector(&ZRule, lambda, 4, &ray(14), 0.0).unwrap();
            assert_eq!(u.residual, 0.0);
            for (x, v) in u.window.iter().zip(&u.values) {
                assert_eq!(*v, slope * x[0] as f64, "lambda {lambda}");
            }
        }
        assert!(matches!(
            construct_eigenvector(&ZRule, -1.5, 4, &ray(14), 0.0),
            Err(BoundaryError::BelowSpectralRadius { .. })
        ));
    }

    #[test]
    fn example_one_harmonic() {
        let u = construct_eigenvector(&Example1Rule { self_loop: false }, 0.0, 4, &ray(12), 0.0).unwrap();
        assert!(u.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn non_tight_boundary_is_not_harmonic() {
        match construct_eigenvector(&NonTightRule, 0.0, 4, &ray(12), 0.0) {
            Err(BoundaryError::EigenCheckFailed { node, residual }) => {
                assert_eq!(node, "0");
                assert_eq!(residual, 1.0);
            }
            other => panic!("{other:?}"),
        }
    }
}
