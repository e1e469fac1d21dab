use std::fmt;
use std::sync::Arc;

use super::norm::Norm;
use super::BusemannError;

type CustomFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum LagrangianKind {
    /// `L(v) = ‖v‖^p / p` with `p > 1`.
    PNorm { norm: Norm, p: f64 },
    /// `L(v) = ‖v‖`.
    Norm(Norm),
    /// A convex function supplied by the caller, who attests convexity.
    Custom { dim: usize, f: CustomFn },
}

impl fmt::Debug for LagrangianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LagrangianKind::PNorm { norm, p } => write!(f, "PNorm {{ norm: {norm:?}, p: {p} }}"),
            LagrangianKind::Norm(n) => write!(f, "Norm({n:?})"),
            LagrangianKind::Custom { dim, .. } => write!(f, "Custom {{ dim: {dim} }}"),
        }
    }
}

/// A convex Lagrangian, bounded below with finite `L(0)`.
#[derive(Clone, Debug)]
pub struct Lagrangian {
    kind: LagrangianKind,
    l0: f64,
}

impl Lagrangian {
    pub fn p_norm(norm: Norm, p: f64) -> Result<Lagrangian, BusemannError> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(BusemannError::InvalidParameter(format!("p must be > 1, got {p}")));
        }
        Ok(Lagrangian { kind: LagrangianKind::PNorm { norm, p }, l0: 0.0 })
    }

    pub fn norm(norm: Norm) -> Lagrangian {
        Lagrangian { kind: LagrangianKind::Norm(norm), l0: 0.0 }
    }

    /// `convex` is the caller's attestation; the convex hull of a
    /// non-convex `L` is never computed.
    pub fn custom<F>(dim: usize, f: F, convex: bool) -> Result<Lagrangian, BusemannError>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if !convex {
            return Err(BusemannError::InvalidParameter("custom Lagrangians must be attested convex".into()));
        }
        let l0 = f(&vec![0.0; dim]);
        if !l0.is_finite() {
            return Err(BusemannError::InvalidParameter(format!("L(0) must be finite, got {l0}")));
        }
        Ok(Lagrangian { kind: LagrangianKind::Custom { dim, f: Arc::new(f) }, l0 })
    }

    pub fn kind(&self) -> &LagrangianKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            LagrangianKind::PNorm { norm, .. } | LagrangianKind::Norm(norm) => norm.dim(),
            LagrangianKind::Custom { dim, .. } => *dim,
        }
    }

    pub fn l0(&self) -> f64 {
        self.l0
    }

    /// The exponent `p` of a p-norm Lagrangian.
    pub fn p(&self) -> Option<f64> {
        match &self.kind {
            LagrangianKind::PNorm { p, .. } => Some(*p),
            _ => None,
        }
    }

    pub fn eval(&self, v: &[f64]) -> f64 {
        match &self.kind {
            LagrangianKind::PNorm { norm, p } => norm.eval(v).powf(*p) / p,
            LagrangianKind::Norm(norm) => norm.eval(v),
            LagrangianKind::Custom { f, .. } => f(v),
        }
    }

    /// `ζ(x) = lim_{t→0⁺} (L(tx) − L(0)) / t`. Custom Lagrangians use the
    /// smallest quotient over `t = 2^{−k}`, `k = 0..=40`, which by convexity
    /// is the closest to the infimum; `−∞` is possible.
    pub fn zeta(&self, x: &[f64]) -> f64 {
        match &self.kind {
            LagrangianKind::PNorm { .. } => 0.0,
            LagrangianKind::Norm(norm) => norm.eval(x),
            LagrangianKind::Custom { f, .. } => {
                if x.iter().all(|c| *c == 0.0) {
                    return 0.0;
                }
                (0..=40)
                    .map(|k| {
                        let t = 0.5f64.powi(k);
                        let tx: Vec<f64> = x.iter().map(|c| t * c).collect();
                        (f(&tx) - self.l0) / t
                    })
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// `q` with `1/p + 1/q = 1`.
pub fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

/// `θ_λ = (qλ)^{1/q}`.
pub fn theta(p: f64, lambda: f64) -> f64 {
    let q = conjugate(p);
    (q * lambda).powf(1.0 / q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::busemann::PolyhedralNorm;

    #[test]
    fn zeta_values() {
        let l2 = Lagrangian::p_norm(Norm::Euclidean(2), 2.0).unwrap();
        assert_eq!(l2.zeta(&[3.0, 4.0]), 0.0);
        assert_eq!(l2.eval(&[3.0, 4.0]), 12.5);
        let linf = Lagrangian::norm(Norm::Polyhedral(PolyhedralNorm::linf(2)));
        assert_eq!(linf.zeta(&[3.0, -5.0]), 5.0);
        let custom = Lagrangian::custom(1, |v| v[0].abs() + v[0] * v[0] + 1.0, true).unwrap();
        assert_eq!(custom.zeta(&[0.0]), 0.0);
        assert!((custom.zeta(&[2.0]) - 2.0).abs() < 1e-9);
        assert_eq!(custom.l0(), 1.0);
        assert!(Lagrangian::custom(1, |v| v[0], false).is_err());
        assert!(Lagrangian::p_norm(Norm::Euclidean(1), 1.0).is_err());
    }

    #[test]
    fn theta_lambda() {
        assert_eq!(theta(2.0, 2.0), 2.0);
        assert_eq!(theta(2.0, 0.5), 1.0);
    }
}
