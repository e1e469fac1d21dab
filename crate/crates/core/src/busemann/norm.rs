use std::path::Path;

use nalgebra::{DMatrix, DVector};

use super::BusemannError;

/// Coordinates closer than this are treated as equal when checking the dual ball.
const DUAL_TOL: f64 = 1e-9;

/// `‖x‖ = max_i x'_i · x` over the extreme points of the dual unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralNorm {
    dim: usize,
    duals: Vec<Vec<f64>>,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl PolyhedralNorm {
    /// Validates symmetry, definiteness (`‖±e_i‖ > 0`), and, in dimension
    /// at most 3, that no listed point is a convex combination of others.
    pub fn new(duals: Vec<Vec<f64>>) -> Result<PolyhedralNorm, BusemannError> {
        let degenerate = |m: String| Err(BusemannError::DegenerateDual(m));
        let Some(dim) = duals.first().map(Vec::len) else {
            return degenerate("no dual extreme points".into());
        };
        if dim == 0 {
            return degenerate("dimension 0".into());
        }
        if let Some(v) = duals.iter().find(|v| v.len() != dim) {
            return Err(BusemannError::DimensionMismatch { expected: dim, found: v.len() });
        }
        if duals.iter().flatten().any(|c| !c.is_finite()) {
            return degenerate("non-finite coordinate".into());
        }
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= DUAL_TOL);
        for (i, v) in duals.iter().enumerate() {
            if duals[..i].iter().any(|u| close(u, v)) {
                return degenerate(format!("duplicate extreme point {v:?}"));
            }
            let neg: Vec<f64> = v.iter().map(|c| -c).collect();
            if !duals.iter().any(|u| close(u, &neg)) {
                return degenerate(format!("{v:?} listed without its negative"));
            }
        }
        let norm = PolyhedralNorm { dim, duals };
        for axis in 0..dim {
            for sign in [1.0, -1.0] {
                let mut e = vec![0.0; dim];
                e[axis] = sign;
                if norm.eval(&e) <= DUAL_TOL {
                    return degenerate(format!("‖{e:?}‖ = 0, so 0 is not interior to the dual ball"));
                }
            }
        }
        if dim <= 3 {
            for i in 0..norm.duals.len() {
                if norm.in_hull_of_others(i) {
                    return degenerate(format!("{:?} is a convex combination of the others", norm.duals[i]));
                }
            }
        }
        Ok(norm)
    }

    /// ℓ∞: dual extremes `±e_i`.
    pub fn linf(dim: usize) -> PolyhedralNorm {
        let mut duals = Vec::new();
        for i in 0..dim {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; dim];
                e[i] = s;
                duals.push(e);
            }
        }
        PolyhedralNorm { dim, duals }
    }

    /// ℓ¹: dual extremes `(±1, …, ±1)`.
    pub fn l1(dim: usize) -> PolyhedralNorm {
        let duals = (0..1u32 << dim)
            .map(|mask| (0..dim).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect())
            .collect();
        PolyhedralNorm { dim, duals }
    }

    /// `{"dual_extremes": [[1, 0], [-1, 0], …]}`.
    pub fn from_json(text: &str) -> Result<PolyhedralNorm, BusemannError> {
        #[derive(serde::Deserialize)]
        struct Raw {
            dual_extremes: Vec<Vec<f64>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| BusemannError::NormFile(e.to_string()))?;
        Self::new(raw.dual_extremes)
    }

    pub fn from_path(path: &Path) -> Result<PolyhedralNorm, BusemannError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BusemannError::NormFile(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn duals(&self) -> &[Vec<f64>] {
        &self.duals
    }

    pub fn dual(&self, i: usize) -> &[f64] {
        &self.duals[i]
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.duals.iter().map(|d| dot(d, x)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Carathéodory: a point of a convex hull in ℝⁿ lies in the hull of at
    /// most `n + 1` of the generators.
    fn in_hull_of_others(&self, i: usize) -> bool {
        let others: Vec<usize> = (0..self.duals.len()).filter(|&j| j != i).collect();
        let target = &self.duals[i];
        let max_k = (self.dim + 1).min(others.len());
        let mut subset = Vec::new();
        (1..=max_k).any(|k| self.search_subsets(&others, k, 0, &mut subset, target))
    }

    fn search_subsets(&self, pool: &[usize], k: usize, from: usize, subset: &mut Vec<usize>, target: &[f64]) -> bool {
        if subset.len() == k {
            return self.is_convex_combination(subset, target);
        }
        for j in from..pool.len() {
            subset.push(pool[j]);
            if self.search_subsets(pool, k, j + 1, subset, target) {
                return true;
            }
            subset.pop();
        }
        false
    }

    /// Least-squares barycentric weights; accepted when nonnegative and exact.
    fn is_convex_combination(&self, subset: &[usize], target: &[f64]) -> bool {
        let rows = self.dim + 1;
        let m = DMatrix::from_fn(rows, subset.len(), |r, c| if r < self.dim { self.duals[subset[c]][r] } else { 1.0 });
        let b = DVector::from_fn(rows, |r, _| if r < self.dim { target[r] } else { 1.0 });
        let Ok(lambda) = m.clone().svd(true, true).solve(&b, 1e-12) else {
            return false;
        };
        let residual = (&m * &lambda - &b).norm();
        residual <= DUAL_TOL && lambda.iter().all(|l| *l >= -DUAL_TOL)
    }
}

/// A norm on ℝⁿ: polyhedral, or Euclidean.
#[derive(Debug, Clone, PartialEq)]
pub enum Norm {
    Polyhedral(PolyhedralNorm),
    Euclidean(usize),
}

impl Norm {
    /// `linf | l1 | l2 | file:POLY.json`.
    pub fn parse(spec: &str, dim: usize) -> Result<Norm, BusemannError> {
        if dim == 0 {
            return Err(BusemannError::InvalidParameter("dimension must be positive".into()));
        }
        let norm = match spec {
            "linf" => Norm::Polyhedral(PolyhedralNorm::linf(dim)),
            "l1" => Norm::Polyhedral(PolyhedralNorm::l1(dim)),
            "l2" => Norm::Euclidean(dim),
            other => match other.strip_prefix("file:") {
                Some(path) => Norm::Polyhedral(PolyhedralNorm::from_path(Path::new(path))?),
                None => return Err(BusemannError::UnknownNorm(other.to_string())),
            },
        };
        if norm.dim() != dim {
            return Err(BusemannError::DimensionMismatch { expected: dim, found: norm.dim() });
        }
        Ok(norm)
    }

    pub fn dim(&self) -> usize {
        match self {
            Norm::Polyhedral(p) => p.dim(),
            Norm::Euclidean(d) => *d,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Norm::Polyhedral(p) => p.eval(x),
            Norm::Euclidean(_) => x.iter().map(|c| c * c).sum::<f64>().sqrt(),
        }
    }

    /// Lipschitz constant with respect to ℓ∞: `‖x‖ ≤ c ‖x‖∞`.
    pub fn linf_constant(&self) -> f64 {
        match self {
            Norm::Polyhedral(p) => p.duals().iter().map(|d| d.iter().map(|c| c.abs()).sum::<f64>()).fold(0.0, f64::max),
            Norm::Euclidean(d) => (*d as f64).sqrt(),
        }
    }
}
