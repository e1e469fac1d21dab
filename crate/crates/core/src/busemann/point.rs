use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::faces::face_from_direction;
use super::norm::{dot, Norm, PolyhedralNorm};
use super::BusemannError;

/// A Busemann point of a normed space, normalized to vanish at the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum BusemannPoint {
    /// `min_{j∈J} x'_j·(x − X) + max_{j∈J} x'_j·X`.
    Polyhedral { face: Vec<usize>, duals: Vec<Vec<f64>>, offset: Vec<f64>, center: f64 },
    /// `x ↦ x·y` with `‖y‖₂ = 1`.
    Euclidean { direction: Vec<f64> },
}

impl BusemannPoint {
    pub fn polyhedral(norm: &PolyhedralNorm, face: Vec<usize>, offset: Vec<f64>) -> Result<BusemannPoint, BusemannError> {
        if face.is_empty() {
            return Err(BusemannError::EmptyFace);
        }
        if offset.len() != norm.dim() {
            return Err(BusemannError::DimensionMismatch { expected: norm.dim(), found: offset.len() });
        }
        if let Some(&bad) = face.iter().find(|&&j| j >= norm.duals().len()) {
            return Err(BusemannError::InvalidParameter(format!("face index {bad} out of range")));
        }
        let duals = face.iter().map(|&j| norm.dual(j).to_vec()).collect();
        let mut point = BusemannPoint::Polyhedral { face, duals, offset, center: 0.0 };
        let c = point.eval(&vec![0.0; norm.dim()]);
        if let BusemannPoint::Polyhedral { center, .. } = &mut point {
            *center = c;
        }
        Ok(point)
    }

    pub fn euclidean(y: &[f64]) -> Result<BusemannPoint, BusemannError> {
        let len = dot(y, y).sqrt();
        if len == 0.0 || !len.is_finite() {
            return Err(BusemannError::ZeroDirection);
        }
        Ok(BusemannPoint::Euclidean { direction: y.iter().map(|c| c / len).collect() })
    }

    pub fn dim(&self) -> usize {
        match self {
            BusemannPoint::Polyhedral { offset, .. } => offset.len(),
            BusemannPoint::Euclidean { direction } => direction.len(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            BusemannPoint::Polyhedral { duals, offset, center, .. } => {
                let shifted: Vec<f64> = x.iter().zip(offset).map(|(a, b)| a - b).collect();
                let lo = duals.iter().map(|d| dot(d, &shifted)).fold(f64::INFINITY, f64::min);
                let hi = duals.iter().map(|d| dot(d, offset)).fold(f64::NEG_INFINITY, f64::max);
                lo + hi - center
            }
            BusemannPoint::Euclidean { direction } => dot(direction, x),
        }
    }

    /// Human-readable formula, e.g. `min(x1 - 5, x2) + 5`.
    pub fn describe(&self) -> String {
        let linear = |d: &[f64], shift: Option<&[f64]>| {
            let mut terms = Vec::new();
            for (i, c) in d.iter().enumerate() {
                if *c == 0.0 {
                    continue;
                }
                let var = match shift {
                    Some(x) if x[i] > 0.0 => format!("(x{} - {})", i + 1, x[i]),
                    Some(x) if x[i] < 0.0 => format!("(x{} + {})", i + 1, -x[i]),
                    _ => format!("x{}", i + 1),
                };
                terms.push(match *c {
                    1.0 => var,
                    -1.0 => format!("-{var}"),
                    c => format!("{c}*{var}"),
                });
            }
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        match self {
            BusemannPoint::Euclidean { direction } => linear(direction, None),
            BusemannPoint::Polyhedral { duals, offset, center, .. } => {
                if duals.len() == 1 {
                    return linear(&duals[0], None);
                }
                let parts: Vec<String> = duals.iter().map(|d| linear(d, Some(offset))).collect();
                let constant = duals.iter().map(|d| dot(d, offset)).fold(f64::NEG_INFINITY, f64::max) - center;
                match constant {
                    c if c == 0.0 => format!("min({})", parts.join(", ")),
                    c if c < 0.0 => format!("min({}) - {}", parts.join(", "), -c),
                    c => format!("min({}) + {c}", parts.join(", ")),
                }
            }
        }
    }

    /// `|w(x) − w(z)| ≤ ‖x − z‖` on random pairs in `[−scale, scale]ⁿ`, and `w(0) = 0`.
    pub fn nonexpansive_check(&self, norm: &Norm, pairs: usize, seed: u64, scale: f64, tol: f64) -> NonexpansiveReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.dim();
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..pairs {
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-scale..=scale)).collect();
            let z: Vec<f64> = (0..n).map(|_| rng.random_range(-scale..=scale)).collect();
            let diff: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a - b).collect();
            worst = worst.max((self.eval(&x) - self.eval(&z)).abs() - norm.eval(&diff));
        }
        let origin_value = self.eval(&vec![0.0; n]);
        NonexpansiveReport { pass: worst <= tol && origin_value.abs() <= tol, worst_excess: worst, origin_value, pairs }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NonexpansiveReport {
    pub pass: bool,
    /// `max |w(x) − w(z)| − ‖x − z‖` over the sampled pairs.
    pub worst_excess: f64,
    pub origin_value: f64,
    pub pairs: usize,
}

#[derive(Debug, Clone)]
pub struct RayLimit {
    pub point: BusemannPoint,
    pub t_max: f64,
    /// Largest `|‖X+ty‖ − ‖X+ty−x‖ − w(x)|` at `t = t_max` over the samples.
    pub max_gap: f64,
}

/// `‖a‖ − ‖a − x‖`; for the Euclidean norm in a cancellation-free form.
fn horo_difference(norm: &Norm, a: &[f64], x: &[f64]) -> f64 {
    let amx: Vec<f64> = a.iter().zip(x).map(|(p, q)| p - q).collect();
    match norm {
        Norm::Euclidean(_) => {
            let (na, nb) = (norm.eval(a), norm.eval(&amx));
            if na + nb == 0.0 {
                0.0
            } else {
                (2.0 * dot(a, x) - dot(x, x)) / (na + nb)
            }
        }
        Norm::Polyhedral(_) => norm.eval(a) - norm.eval(&amx),
    }
}

/// Limit of the ray `t ↦ X + ty`, in closed form, confirmed numerically at
/// `t = t_max` on `samples`.
pub fn ray_limit(
    norm: &Norm,
    offset: &[f64],
    y: &[f64],
    samples: &[Vec<f64>],
    t_max: f64,
    tol: f64,
) -> Result<RayLimit, BusemannError> {
    let n = norm.dim();
    for v in [offset, y].into_iter().chain(samples.iter().map(Vec::as_slice)) {
        if v.len() != n {
            return Err(BusemannError::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    let point = match norm {
        Norm::Polyhedral(p) => BusemannPoint::polyhedral(p, face_from_direction(p, y)?, offset.to_vec())?,
        Norm::Euclidean(_) => BusemannPoint::euclidean(y)?,
    };
    let a: Vec<f64> = offset.iter().zip(y).map(|(o, d)| o + t_max * d).collect();
    let mut max_gap: f64 = 0.0;
    let mut at = None;
    for x in samples {
        let gap = (horo_difference(norm, &a, x) - point.eval(x)).abs();
        if gap > max_gap {
            max_gap = gap;
            at = Some(x.clone());
        }
    }
    if max_gap > tol {
        return Err(BusemannError::ConfirmationFailed { gap: max_gap, at: at.unwrap_or_default() });
    }
    Ok(RayLimit { point, t_max, max_gap })
}
