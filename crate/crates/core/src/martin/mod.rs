//! Martin kernels, the minimal Martin space, representing measures and
//! extremality for finite kernels.
//!
//! On a finite node set the Martin space is just the set of columns of
//! `K = A* π⁻¹`, closures are exact, and the minimal Martin space consists of
//! the recurrent columns when ρ(A) = 𝟙.

mod measure;
mod product;

pub use measure::{
    decompose_harmonic, is_extremal, mu, reconstruct, Atom, Extremality, RepresentingMeasure,
};
pub use product::{pair_label, tensor_product, tensor_row, tensor_sum};

use thiserror::Error;

use crate::spectral::{spectral_data_with_tol, SpectralData, SpectralError};
use crate::tropical::{
    kleene_plus, kleene_star, star_row, NumericMode, Trop, TropicalError, TropicalMatrix,
    TropicalVector,
};
use crate::util::natural_cmp;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MartinError {
    #[error("row is not super-harmonic: pi[{from}] + A[{from},{to}] exceeds pi[{to}] by {excess}")]
    NotSuperharmonic { from: String, to: String, excess: f64 },
    #[error("row has no finite value at node `{node}` (basepoint cannot reach it)")]
    NotFullSupport { node: String },
    #[error("closure diverges (+inf) at node `{node}`")]
    DivergentStar { node: String },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("vector has length {found}, kernel has {expected} nodes")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not super-harmonic at node `{node}`")]
    VectorNotSuperharmonic { node: String },
    #[error("vector is not harmonic at node `{node}` (residual {residual})")]
    NotHarmonic { node: String, residual: f64 },
    #[error("the zero vector has no representing measure")]
    ZeroVector,
    #[error("no minimal Martin points: a non-zero harmonic vector cannot exist here")]
    NoMinimalSpace,
    #[error("density is +inf on atom `{node}`")]
    UnboundedDensity { node: String },
    #[error("vector is not normalized: pi . u = {value}")]
    NotNormalized { value: f64 },
    #[error("reconstruction differs from the input by {gap}")]
    RepresentationMismatch { gap: f64 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

/// How the reference row π is obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum PiSpec {
    /// π = A*_{b·}.
    Basepoint(String),
    /// π = σA* for a finitely supported row σ given as `(node, value)` pairs.
    SigmaRow(Vec<(String, f64)>),
    /// π given outright, aligned to the kernel's labels.
    Explicit(TropicalVector),
}

/// A validated reference row.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedPi {
    pub spec: PiSpec,
    pub row: TropicalVector,
}

fn spec_values(spec: &PiSpec) -> Vec<f64> {
    match spec {
        PiSpec::Basepoint(_) => Vec::new(),
        PiSpec::SigmaRow(s) => s.iter().map(|e| e.1).collect(),
        PiSpec::Explicit(v) => v.values(),
    }
}

/// Tolerance for a kernel together with its π data.
pub fn infer_tol(a: &TropicalMatrix, spec: &PiSpec) -> f64 {
    NumericMode::detect(a.finite_values().into_iter().chain(spec_values(spec))).tol()
}

/// Resolve π and check it is finite and super-harmonic (π ≥ πA).
pub fn validate_pi(a: &TropicalMatrix, spec: PiSpec) -> Result<ResolvedPi, MartinError> {
    let tol = infer_tol(a, &spec);
    validate_pi_with_tol(a, spec, tol)
}

pub fn validate_pi_with_tol(
    a: &TropicalMatrix,
    spec: PiSpec,
    tol: f64,
) -> Result<ResolvedPi, MartinError> {
    let n = a.n();
    let row = match &spec {
        PiSpec::Basepoint(b) => {
            let bi = a.index_of(b).ok_or_else(|| MartinError::UnknownNode(b.clone()))?;
            star_row(a, bi)
        }
        PiSpec::SigmaRow(sigma) => {
            let mut acc = TropicalVector::zero(n);
            for (label, s) in sigma {
                let k = a.index_of(label).ok_or_else(|| MartinError::UnknownNode(label.clone()))?;
                acc = acc.oplus(&star_row(a, k).scale(Trop(*s)));
            }
            acc
        }
        PiSpec::Explicit(v) => {
            if v.len() != n {
                return Err(MartinError::DimensionMismatch { expected: n, found: v.len() });
            }
            v.clone()
        }
    };
    for (i, p) in row.iter().enumerate() {
        if p.is_top() {
            return Err(MartinError::DivergentStar { node: a.label(i).to_string() });
        }
    }
    for (i, p) in row.iter().enumerate() {
        if p.is_zero() {
            return Err(MartinError::NotFullSupport { node: a.label(i).to_string() });
        }
    }
    for (i, j, w) in a.arcs() {
        let excess = row.get(i).0 + w - row.get(j).0;
        if excess > tol {
            return Err(MartinError::NotSuperharmonic {
                from: a.label(i).to_string(),
                to: a.label(j).to_string(),
                excess,
            });
        }
    }
    Ok(ResolvedPi { spec, row })
}

/// Everything derived from a finite kernel and its reference row.
#[derive(Clone, Debug)]
pub struct MartinData {
    pub a: TropicalMatrix,
    pub pi: ResolvedPi,
    pub star: TropicalMatrix,
    pub plus: TropicalMatrix,
    /// `K_ij = A*_ij − π_j`.
    pub k: TropicalMatrix,
    /// `K♭_ij = A⁺_ij − π_j`.
    pub kflat: TropicalMatrix,
    /// `H_ij = π_i + K_ij`.
    pub h: TropicalMatrix,
    /// `H♭_ij = π_i + K♭_ij`.
    pub hflat: TropicalMatrix,
    pub spectral: SpectralData,
    /// Groups of nodes with identical `K` columns; each group sorted with its
    /// representative (smallest label) first, groups ordered by representative.
    pub column_classes: Vec<Vec<usize>>,
    /// `class_of[j]` indexes `column_classes`.
    pub class_of: Vec<usize>,
    /// Comparison tolerance (0 in integer mode).
    pub tol: f64,
}

/// Build [`MartinData`] with the tolerance inferred from the data.
pub fn martin_data(a: &TropicalMatrix, spec: PiSpec) -> Result<MartinData, MartinError> {
    let tol = infer_tol(a, &spec);
    martin_data_with_tol(a, spec, tol)
}

pub fn martin_data_with_tol(
    a: &TropicalMatrix,
    spec: PiSpec,
    tol: f64,
) -> Result<MartinData, MartinError> {
    let pi = validate_pi_with_tol(a, spec, tol)?;
    let n = a.n();
    let star = kleene_star(a);
    let plus = kleene_plus(a);
    let p = pi.row.values();
    let scaled = |m: &TropicalMatrix, left: bool| {
        let mut rows = vec![vec![f64::NEG_INFINITY; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let v = m.value(i, j);
                if v != f64::NEG_INFINITY {
                    *cell = v - p[j] + if left { p[i] } else { 0.0 };
                }
            }
        }
        TropicalMatrix::from_dense(a.labels().to_vec(), &rows)
    };
    let k = scaled(&star, false)?;
    let kflat = scaled(&plus, false)?;
    let h = scaled(&star, true)?;
    let hflat = scaled(&plus, true)?;
    let spectral = spectral_data_with_tol(a, tol)?;

    let mut column_classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    let columns: Vec<TropicalVector> = (0..n).map(|j| k.column(j)).collect();
    for j in 0..n {
        if class_of[j] != usize::MAX {
            continue;
        }
        let id = column_classes.len();
        let mut group = vec![j];
        class_of[j] = id;
        for l in j + 1..n {
            if class_of[l] == usize::MAX && columns[j].approx_eq(&columns[l], tol) {
                class_of[l] = id;
                group.push(l);
            }
        }
        group.sort_by(|x, y| natural_cmp(a.label(*x), a.label(*y)));
        column_classes.push(group);
    }
    // order groups by representative label, then reindex
    let mut order: Vec<usize> = (0..column_classes.len()).collect();
    order.sort_by(|x, y| natural_cmp(a.label(column_classes[*x][0]), a.label(column_classes[*y][0])));
    let column_classes: Vec<Vec<usize>> = order.iter().map(|&c| column_classes[c].clone()).collect();
    for (id, g) in column_classes.iter().enumerate() {
        for &j in g {
            class_of[j] = id;
        }
    }
    Ok(MartinData {
        a: a.clone(),
        pi,
        star,
        plus,
        k,
        kflat,
        h,
        hflat,
        spectral,
        column_classes,
        class_of,
        tol,
    })
}

impl MartinData {
    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn label(&self, i: usize) -> &str {
        self.a.label(i)
    }

    /// Representative node of column class `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.column_classes[c][0]
    }

    /// Column `K_{·j}`.
    pub fn column(&self, j: usize) -> TropicalVector {
        self.k.column(j)
    }

    /// ρ(A) = 𝟙 within tolerance.
    pub fn rho_is_one(&self) -> bool {
        self.spectral.rho.is_finite() && self.spectral.rho.0.abs() <= self.tol
    }

    fn check_len(&self, u: &TropicalVector) -> Result<(), MartinError> {
        if u.len() != self.n() {
            return Err(MartinError::DimensionMismatch { expected: self.n(), found: u.len() });
        }
        Ok(())
    }

    /// `Au ≤ u`; false whenever `u` has a +∞ entry.
    pub fn is_superharmonic(&self, u: &TropicalVector) -> bool {
        self.first_superharmonic_violation(u).is_none()
    }

    pub(crate) fn first_superharmonic_violation(&self, u: &TropicalVector) -> Option<usize> {
        if u.len() != self.n() {
            return Some(0);
        }
        if let Some(i) = u.iter().position(|t| t.is_top()) {
            return Some(i);
        }
        let au = self.a.mat_vec(u).ok()?;
        (0..self.n()).find(|&i| !crate::tropical::scalar::approx_le(au.get(i).0, u.get(i).0, self.tol))
    }

    /// `Au = u` (the 𝟘 vector qualifies).
    pub fn is_harmonic(&self, u: &TropicalVector) -> bool {
        self.harmonic_residual(u).is_ok()
    }

    /// Worst `|(Au)_i − u_i|`, or the offending node.
    pub(crate) fn harmonic_residual(&self, u: &TropicalVector) -> Result<f64, (usize, f64)> {
        if u.len() != self.n() || u.has_top() {
            return Err((0, f64::INFINITY));
        }
        let au = self.a.mat_vec(u).expect("length checked");
        let mut worst = 0.0f64;
        for i in 0..self.n() {
            let g = crate::tropical::scalar::gap(au.get(i).0, u.get(i).0);
            if g > self.tol {
                return Err((i, g));
            }
            worst = worst.max(g);
        }
        Ok(worst)
    }

    /// `π ⊙ u < +∞`.
    pub fn is_integrable(&self, u: &TropicalVector) -> bool {
        u.len() == self.n() && !self.pi.row.dot(u).is_top()
    }

    /// `π ⊙ u`.
    pub fn pairing(&self, u: &TropicalVector) -> Result<Trop, MartinError> {
        self.check_len(u)?;
        Ok(self.pi.row.dot(u))
    }
}

/// One representative per recurrence class, or nothing unless ρ(A) = 𝟙.
pub fn minimal_martin_finite(md: &MartinData) -> Vec<usize> {
    if !md.rho_is_one() {
        return Vec::new();
    }
    let mut reps: Vec<usize> = md
        .spectral
        .classes
        .iter()
        .map(|class| md.representative(md.class_of[class[0]]))
        .collect();
    reps.sort_by(|x, y| natural_cmp(md.label(*x), md.label(*y)));
    reps.dedup();
    reps
}

/// Re-normalize a column for a new basepoint: `w ↦ w ⊙ (w_{b'})⁻¹`.
pub fn rebase(w: &TropicalVector, b_prime: usize) -> Option<TropicalVector> {
    w.get(b_prime).inverse().map(|inv| w.scale(inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::numbered_labels;

    pub(crate) fn example(n: usize, loop0: bool) -> TropicalMatrix {
        let mut arcs: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 0.0)).collect();
        arcs.extend((1..n).map(|i| (i, 0, -1.0)));
        if loop0 {
            arcs.push((0, 0, 0.0));
        }
        TropicalMatrix::from_arcs(numbered_labels(n), arcs).unwrap()
    }

    fn z_truncation(r: i64) -> TropicalMatrix {
        let labels: Vec<String> = (-r..=r).map(|i| i.to_string()).collect();
        let n = labels.len();
        let arcs = (0..n - 1).flat_map(|k| [(k, k + 1, -1.0), (k + 1, k, -1.0)]);
        TropicalMatrix::from_arcs(labels, arcs).unwrap()
    }

    #[test]
    fn example1_basepoint_row_is_zero() {
        let pi = validate_pi(&example(4, false), PiSpec::Basepoint("0".into())).unwrap();
        assert_eq!(pi.row.values(), vec![0.0; 4]);
    }

    #[test]
    fn validate_pi_errors() {
        let a = TropicalMatrix::from_arcs(numbered_labels(1), [(0, 0, 1.0)]).unwrap();
        assert!(matches!(
            validate_pi(&a, PiSpec::Basepoint("0".into())),
            Err(MartinError::DivergentStar { .. })
        ));
        assert!(matches!(
            validate_pi(&a, PiSpec::Explicit(TropicalVector::from(vec![0.0]))),
            Err(MartinError::NotSuperharmonic { .. })
        ));
        let b = TropicalMatrix::from_arcs(numbered_labels(2), [(1, 0, -1.0)]).unwrap();
        assert!(matches!(
            validate_pi(&b, PiSpec::Basepoint("0".into())),
            Err(MartinError::NotFullSupport { node }) if node == "1"
        ));
        assert!(matches!(
            validate_pi(&b, PiSpec::Basepoint("x".into())),
            Err(MartinError::UnknownNode(_))
        ));
    }

    #[test]
    fn sigma_row_resolves_through_star() {
        let a = example(3, false);
        let pi = validate_pi(&a, PiSpec::SigmaRow(vec![("2".into(), 0.0)])).unwrap();
        assert_eq!(pi.row.values(), vec![-1.0, -1.0, 0.0]);
    }

    #[test]
    fn example2_kernels() {
        let md = martin_data(&example(4, true), PiSpec::Basepoint("0".into())).unwrap();
        assert_eq!(md.hflat.value(0, 0), 0.0);
        for i in 1..4 {
            assert!(md.hflat.value(i, i) < 0.0);
        }
        for i in 0..4 {
            assert_eq!(md.h.value(i, i), 0.0);
        }
        assert_eq!(minimal_martin_finite(&md), vec![0]);
        assert!(md.is_harmonic(&md.column(0)));
    }

    #[test]
    fn example1_has_empty_minimal_set() {
        let md = martin_data(&example(4, false), PiSpec::Basepoint("0".into())).unwrap();
        assert!(minimal_martin_finite(&md).is_empty());
        let col = md.star.column(2);
        assert!(md.is_superharmonic(&col));
        assert!(!md.is_harmonic(&col));
    }

    #[test]
    fn z_kernel_closed_form() {
        let md = martin_data(&z_truncation(3), PiSpec::Basepoint("0".into())).unwrap();
        for (a, i) in (-3i64..=3).enumerate() {
            for (b, j) in (-3i64..=3).enumerate() {
                assert_eq!(md.k.value(a, b), (j.abs() - (i - j).abs()) as f64);
            }
        }
        assert!(minimal_martin_finite(&md).is_empty());
    }

    #[test]
    fn zero_weight_two_cycle_has_one_minimal_point() {
        let a = TropicalMatrix::from_arcs(numbered_labels(2), [(0, 1, 0.0), (1, 0, 0.0)]).unwrap();
        let md = martin_data(&a, PiSpec::Basepoint("0".into())).unwrap();
        assert_eq!(md.column_classes, vec![vec![0, 1]]);
        assert_eq!(minimal_martin_finite(&md), vec![0]);
    }

    #[test]
    fn zero_vector_conventions() {
        let md = martin_data(&example(4, true), PiSpec::Basepoint("0".into())).unwrap();
        let z = TropicalVector::zero(4);
        assert!(md.is_superharmonic(&z));
        assert!(md.is_harmonic(&z));
        assert!(md.is_integrable(&z));
    }

    #[test]
    fn columns_respect_kernel_bound() {
        let md = martin_data(&z_truncation(2), PiSpec::Basepoint("0".into())).unwrap();
        for i in 0..md.n() {
            for j in 0..md.n() {
                assert!(md.k.value(i, j) <= -md.pi.row.get(i).0);
            }
            assert!(md.is_superharmonic(&md.column(i)));
            assert_eq!(md.pairing(&md.column(i)).unwrap(), Trop::ONE);
        }
    }
}
