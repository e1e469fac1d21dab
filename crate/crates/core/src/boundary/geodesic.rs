use std::collections::HashMap;

use serde::Serialize;

use super::limit::TRUNCATION_MARGIN;
use super::rule::{Coord, KernelRule};
use super::truncation::truncate;
use super::BoundaryError;

/// Reference potential for [`almost_geodesic_check`].
#[derive(Debug, Clone)]
pub enum Potential {
    /// The left form with `π = A*_{b·}` from the basepoint.
    Pi,
    /// The right form with a super-harmonic `u` given on a window.
    Vector(HashMap<Coord, f64>),
}

#[derive(Debug, Clone, Serialize)]
pub struct GeodesicReport {
    pub accepted: bool,
    pub alpha: f64,
    /// `p_k` for every prefix; the path is accepted iff all `p_k ≤ α`.
    pub slacks: Vec<f64>,
    pub first_violation: Option<usize>,
}

/// Arc weights along `path`, or `NotAPath`.
fn arc_weights(rule: &dyn KernelRule, path: &[Coord]) -> Result<Vec<f64>, BoundaryError> {
    if let Some(x) = path.iter().find(|x| !rule.contains(x)) {
        return Err(BoundaryError::UnknownNode(format!("{x:?}")));
    }
    path.windows(2)
        .map(|p| {
            let r = rule.level(&p[0]).max(rule.level(&p[1]));
            rule.neighbors(&p[0], r)
                .into_iter()
                .find(|e| e.0 == p[1])
                .map(|e| e.1)
                .ok_or_else(|| BoundaryError::NotAPath { from: rule.label(&p[0]), to: rule.label(&p[1]) })
        })
        .collect()
}

/// α-almost-geodesic test. In π-mode the slack of the prefix ending at
/// `i_k` is `π_{i_k} − π_{i_0} − (A_{i_0i_1} + ⋯)`; with a vector `u` it is
/// `u_{i_0} − (A_{i_0i_1} + ⋯) − u_{i_k}`.
pub fn almost_geodesic_check(
    rule: &dyn KernelRule,
    path: &[Coord],
    alpha: f64,
    potential: &Potential,
    tol: f64,
) -> Result<GeodesicReport, BoundaryError> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(BoundaryError::InvalidAlpha(alpha));
    }
    if path.is_empty() {
        return Err(BoundaryError::TooFewTargets { needed: 1, got: 0 });
    }
    let weights = arc_weights(rule, path)?;
    let values: Vec<f64> = match potential {
        Potential::Pi => {
            let far = path.iter().map(|x| rule.level(x)).max().unwrap_or(0);
            let trunc = truncate(rule, far + TRUNCATION_MARGIN)?;
            let pi = trunc.pi();
            path.iter().map(|x| pi[trunc.index_of(x).expect("inside ball")]).collect()
        }
        Potential::Vector(u) => path
            .iter()
            .map(|x| u.get(x).copied().ok_or_else(|| BoundaryError::NodeOutsideWindow(rule.label(x))))
            .collect::<Result<_, _>>()?,
    };
    let mut slacks = Vec::with_capacity(path.len());
    let mut walked = 0.0;
    for k in 0..path.len() {
        if k > 0 {
            walked += weights[k - 1];
        }
        slacks.push(match potential {
            Potential::Pi => values[k] - values[0] - walked,
            Potential::Vector(_) => values[0] - walked - values[k],
        });
    }
    let first_violation = slacks.iter().position(|p| *p > alpha + tol);
    Ok(GeodesicReport { accepted: first_violation.is_none(), alpha, slacks, first_violation })
}

/// Restart index for the tail of an accepted path: the first `m` with
/// `p_k − p_m ≤ β` for all `k ≥ m`. `None` when the slacks are not
/// nondecreasing, which cannot happen for super-harmonic potentials.
pub fn tail_restart(report: &GeodesicReport, beta: f64, tol: f64) -> Option<usize> {
    if report.slacks.windows(2).any(|w| w[1] < w[0] - tol) {
        return None;
    }
    let last = *report.slacks.last()?;
    report.slacks.iter().position(|p| last - p <= beta)
}

#[derive(Debug, Clone, Serialize)]
pub struct RieffelReport {
    pub pass: bool,
    /// `max |d(γ_t, γ_s) + d(γ_s, γ_0) − t|` over pairs `s ≤ t`.
    pub worst: f64,
    pub witness: Option<(usize, usize)>,
    /// Parameters `t_k`: cumulative arc length from the start.
    pub params: Vec<f64>,
}

/// Rieffel's almost-geodesic test for the metric `d = −A*`, with the path
/// parametrized by arc length.
pub fn rieffel_check(
    rule: &dyn KernelRule,
    path: &[Coord],
    epsilon: f64,
) -> Result<RieffelReport, BoundaryError> {
    if !rule.is_symmetric() {
        return Err(BoundaryError::NotMetric(rule.name()));
    }
    if path.is_empty() {
        return Err(BoundaryError::TooFewTargets { needed: 1, got: 0 });
    }
    let weights = arc_weights(rule, path)?;
    let mut params = vec![0.0];
    for w in &weights {
        params.push(params.last().unwrap() - w);
    }
    let far = path.iter().map(|x| rule.level(x)).max().unwrap_or(0);
    let trunc = truncate(rule, far + TRUNCATION_MARGIN)?;
    let idx: Vec<usize> = path.iter().map(|x| trunc.index_of(x).expect("inside ball")).collect();
    // d(γ_t, ·) rows for every path node
    let rows: Vec<Vec<f64>> = idx.iter().map(|&i| trunc.star_row(i)).collect();
    let d = |a: usize, b: usize| -rows[a][idx[b]];
    let mut worst = 0.0;
    let mut witness = None;
    for t in 0..path.len() {
        for s in 0..=t {
            let e = (d(t, s) + d(s, 0) - params[t]).abs();
            if e > worst {
                worst = e;
                witness = Some((s, t));
            }
        }
    }
    Ok(RieffelReport { pass: worst < epsilon, worst, witness, params })
}
