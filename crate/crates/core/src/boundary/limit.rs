use serde::Serialize;

use super::rule::{Coord, KernelRule};
use super::truncation::{truncate, BallTruncation};
use super::BoundaryError;
use crate::util::abs_gap;

/// Number of trailing targets compared for the Cauchy test.
pub const CAUCHY_SPAN: usize = 3;
/// Default truncation radius is `window + max target level + TRUNCATION_MARGIN`.
pub const TRUNCATION_MARGIN: i64 = 5;
/// The artifact probe re-evaluates on a ball this much larger.
pub const ARTIFACT_PROBE: i64 = 3;

/// A boundary point (or kernel column) restricted to a window.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryEstimate {
    pub rule: String,
    pub window: Vec<Coord>,
    pub labels: Vec<String>,
    pub values: Vec<f64>,
    pub sequence_tail: Vec<Coord>,
    pub converged: bool,
    pub residual: f64,
    pub tol: f64,
    pub truncation_radius: i64,
    /// Largest change of a window value under the artifact probe.
    pub artifact_gap: f64,
    /// False for a single kernel column `K_{·j}`.
    pub escaping: bool,
}

impl BoundaryEstimate {
    pub fn value_at(&self, x: &Coord) -> Option<f64> {
        self.window.iter().position(|w| w == x).map(|i| self.values[i])
    }

    /// Sup-distance to a closed form on the window.
    pub fn gap_to<F: Fn(&Coord) -> f64>(&self, f: F) -> f64 {
        self.window.iter().zip(&self.values).map(|(x, v)| abs_gap(*v, f(x))).fold(0.0, f64::max)
    }

    /// Sup-distance to another estimate on the common window.
    pub fn gap(&self, other: &BoundaryEstimate) -> f64 {
        self.window
            .iter()
            .zip(&self.values)
            .filter_map(|(x, v)| other.value_at(x).map(|w| abs_gap(*v, w)))
            .fold(0.0, f64::max)
    }

    pub fn window_radius(&self, rule: &dyn KernelRule) -> i64 {
        self.window.iter().map(|x| rule.level(x)).max().unwrap_or(0)
    }
}

/// Nodes with `level ≤ radius`, ordered by level then coordinates.
pub fn window_nodes(rule: &dyn KernelRule, radius: i64) -> Vec<Coord> {
    let mut w = rule.nodes_within(radius);
    w.sort_by(|a, b| rule.level(a).cmp(&rule.level(b)).then_with(|| a.cmp(b)));
    w
}

/// `K_{x,t} = A*_{x,t} − π_t` for `x` in the window.
fn kernel_on_window(trunc: &BallTruncation, window: &[usize], t: usize, pi: &[f64]) -> Vec<f64> {
    let col = trunc.star_column(t);
    window.iter().map(|&x| col[x] - pi[t]).collect()
}

fn window_indices(
    rule: &dyn KernelRule,
    trunc: &BallTruncation,
    window: &[Coord],
) -> Result<Vec<usize>, BoundaryError> {
    window
        .iter()
        .map(|x| trunc.index_of(x).ok_or_else(|| BoundaryError::NodeOutsideWindow(rule.label(x))))
        .collect()
}

/// Evaluate Martin-kernel columns along `targets` on a window, without
/// failing on non-convergence.
///
/// With `require_escape`, at least [`CAUCHY_SPAN`] targets are needed and the
/// last one must lie outside the window.
pub fn estimate_columns(
    rule: &dyn KernelRule,
    targets: &[Coord],
    window_radius: i64,
    tol: f64,
    truncation_radius: Option<i64>,
    require_escape: bool,
) -> Result<BoundaryEstimate, BoundaryError> {
    let needed = if require_escape { CAUCHY_SPAN } else { 1 };
    if targets.len() < needed {
        return Err(BoundaryError::TooFewTargets { needed, got: targets.len() });
    }
    if window_radius < 0 {
        return Err(BoundaryError::InvalidRadius { radius: window_radius, min: 0 });
    }
    if let Some(t) = targets.iter().find(|t| !rule.contains(t)) {
        return Err(BoundaryError::UnknownNode(format!("{t:?}")));
    }
    let tail = &targets[targets.len().saturating_sub(CAUCHY_SPAN)..];
    let last = tail.last().expect("nonempty");
    if require_escape && rule.level(last) <= window_radius {
        return Err(BoundaryError::TargetsDoNotEscape { level: rule.level(last), window: window_radius });
    }
    let far = tail.iter().map(|t| rule.level(t)).max().unwrap_or(0).max(window_radius);
    let radius = truncation_radius.unwrap_or(window_radius + far + TRUNCATION_MARGIN);
    if radius < far.max(1) {
        return Err(BoundaryError::InvalidRadius { radius, min: far.max(1) });
    }

    let window = window_nodes(rule, window_radius);
    let evaluate = |radius: i64, which: &[Coord]| -> Result<Vec<Vec<f64>>, BoundaryError> {
        let trunc = truncate(rule, radius)?;
        let idx = window_indices(rule, &trunc, &window)?;
        let pi = trunc.pi();
        which
            .iter()
            .map(|t| {
                let ti = trunc.index_of(t).ok_or_else(|| BoundaryError::NodeOutsideWindow(rule.label(t)))?;
                Ok(kernel_on_window(&trunc, &idx, ti, &pi))
            })
            .collect()
    };

    let evals = evaluate(radius, tail)?;
    let residual = evals
        .windows(2)
        .flat_map(|p| p[0].iter().zip(&p[1]).map(|(a, b)| abs_gap(*a, *b)))
        .fold(0.0, f64::max);
    let values = evals.last().expect("nonempty").clone();

    let probe = evaluate(radius + ARTIFACT_PROBE, std::slice::from_ref(last))?;
    let artifact_gap = values.iter().zip(&probe[0]).map(|(a, b)| abs_gap(*a, *b)).fold(0.0, f64::max);
    if artifact_gap > tol {
        return Err(BoundaryError::TruncationArtifact {
            radius,
            probe: radius + ARTIFACT_PROBE,
            gap: artifact_gap,
        });
    }

    Ok(BoundaryEstimate {
        rule: rule.name(),
        labels: window.iter().map(|x| rule.label(x)).collect(),
        window,
        values,
        sequence_tail: tail.to_vec(),
        converged: residual <= tol,
        residual,
        tol,
        truncation_radius: radius,
        artifact_gap,
        escaping: require_escape,
    })
}

/// Limit of the Martin-kernel columns `K_{·j_k}` on the window of
/// `window_radius`, judged by the Cauchy gap over the last
/// [`CAUCHY_SPAN`] targets.
pub fn column_limit(
    rule: &dyn KernelRule,
    targets: &[Coord],
    window_radius: i64,
    tol: f64,
    truncation_radius: Option<i64>,
) -> Result<BoundaryEstimate, BoundaryError> {
    let est = estimate_columns(rule, targets, window_radius, tol, truncation_radius, true)?;
    if !est.converged {
        return Err(BoundaryError::NotConverged { residual: est.residual, tol });
    }
    Ok(est)
}

/// The single column `K_{·j}` on a window.
pub fn kernel_column(
    rule: &dyn KernelRule,
    target: &Coord,
    window_radius: i64,
    tol: f64,
) -> Result<BoundaryEstimate, BoundaryError> {
    estimate_columns(rule, std::slice::from_ref(target), window_radius, tol, None, false)
}

#[derive(Debug, Clone, Serialize)]
pub struct HFlatEstimate {
    /// Best tail value over all probes.
    pub value: f64,
    pub probe_values: Vec<f64>,
    /// Probes reached different values (order of limits may matter).
    pub probes_disagree: bool,
}

/// Lower estimate of `H♭(w, w)`: for each probe sequence `i`, the value
/// `π_i + K♭_{i,t}` at its deepest node, where `t` is the last target of
/// the estimate. For escaping estimates only probe nodes of level below
/// `t` are used, so the inner limit in `t` is taken first.
pub fn h_flat_self(
    rule: &dyn KernelRule,
    estimate: &BoundaryEstimate,
    probes: &[Vec<Coord>],
    tol: f64,
) -> Result<HFlatEstimate, BoundaryError> {
    let t = estimate.sequence_tail.last().ok_or(BoundaryError::TooFewTargets { needed: 1, got: 0 })?;
    let window_radius = estimate.window_radius(rule);
    let t_level = rule.level(t);
    let mut chosen = Vec::with_capacity(probes.len());
    for (k, probe) in probes.iter().enumerate() {
        if probe.is_empty() {
            return Err(BoundaryError::TooFewTargets { needed: 1, got: 0 });
        }
        let own = estimate_columns(rule, probe, window_radius, tol, None, estimate.escaping && probe.len() >= CAUCHY_SPAN)?;
        let gap = own.gap(estimate);
        if gap > tol {
            return Err(BoundaryError::InconsistentProbes { probe: k, gap });
        }
        let node = probe
            .iter()
            .rev()
            .find(|p| !estimate.escaping || rule.level(p) < t_level)
            .ok_or(BoundaryError::InconsistentProbes { probe: k, gap: f64::INFINITY })?;
        chosen.push(node.clone());
    }
    let far = chosen.iter().map(|p| rule.level(p)).max().unwrap_or(0).max(t_level);
    let trunc = truncate(rule, estimate.truncation_radius.max(far + TRUNCATION_MARGIN))?;
    let pi = trunc.pi();
    let ti = trunc.index_of(t).expect("target inside ball");
    let plus = trunc.plus_column(&trunc.star_column(ti));
    let probe_values: Vec<f64> = chosen
        .iter()
        .map(|p| {
            let pi_ = trunc.index_of(p).expect("probe inside ball");
            pi[pi_] + plus[pi_] - pi[ti]
        })
        .collect();
    let value = probe_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = probe_values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(HFlatEstimate { value, probes_disagree: value - lo > tol, probe_values })
}
