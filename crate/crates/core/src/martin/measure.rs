use serde::Serialize;

use super::{minimal_martin_finite, MartinData, MartinError};
use crate::tropical::{Trop, TropicalVector};

/// One atom of a representing measure: a column class and its density.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Atom {
    /// Representative node index.
    pub node: usize,
    pub label: String,
    #[serde(serialize_with = "crate::cli::json::serialize_trop")]
    pub density: Trop,
}

/// A max-plus measure on column classes: `u = ⊕ density(w) ⊙ w`.
#[derive(Clone, Debug, PartialEq, Default, Serialize)]
pub struct RepresentingMeasure {
    pub atoms: Vec<Atom>,
}

impl RepresentingMeasure {
    pub fn density_of(&self, node: usize) -> Option<Trop> {
        self.atoms.iter().find(|a| a.node == node).map(|a| a.density)
    }

    pub fn sup_density(&self) -> Trop {
        self.atoms.iter().fold(Trop::ZERO, |acc, a| acc + a.density)
    }
}

/// `μ_u(K_{·i}) = π_i ⊙ u_i`, one atom per column class.
pub fn mu(md: &MartinData, u: &TropicalVector) -> Result<RepresentingMeasure, MartinError> {
    md.check_len(u)?;
    if let Some(i) = md.first_superharmonic_violation(u) {
        return Err(MartinError::VectorNotSuperharmonic { node: md.label(i).to_string() });
    }
    let atoms = (0..md.column_classes.len())
        .map(|c| {
            let r = md.representative(c);
            Atom { node: r, label: md.label(r).to_string(), density: md.pi.row.get(r) * u.get(r) }
        })
        .collect();
    Ok(RepresentingMeasure { atoms })
}

/// `⊕ density(w) ⊙ w` over the support.
pub fn reconstruct(md: &MartinData, nu: &RepresentingMeasure) -> Result<TropicalVector, MartinError> {
    let mut u = TropicalVector::zero(md.n());
    for atom in &nu.atoms {
        if atom.node >= md.n() {
            return Err(MartinError::UnknownNode(atom.label.clone()));
        }
        if atom.density.is_top() {
            return Err(MartinError::UnboundedDensity { node: atom.label.clone() });
        }
        if atom.density.is_zero() {
            continue;
        }
        u = u.oplus(&md.column(atom.node).scale(atom.density));
    }
    Ok(u)
}

/// Representation of a harmonic vector on the minimal Martin points.
pub fn decompose_harmonic(
    md: &MartinData,
    u: &TropicalVector,
) -> Result<RepresentingMeasure, MartinError> {
    md.check_len(u)?;
    if u.is_zero() {
        return Err(MartinError::ZeroVector);
    }
    if let Err((i, residual)) = md.harmonic_residual(u) {
        return Err(MartinError::NotHarmonic { node: md.label(i).to_string(), residual });
    }
    let minimal = minimal_martin_finite(md);
    if minimal.is_empty() {
        return Err(MartinError::NoMinimalSpace);
    }
    let full = mu(md, u)?;
    let atoms: Vec<Atom> = full.atoms.into_iter().filter(|a| minimal.contains(&a.node)).collect();
    let nu = RepresentingMeasure { atoms };
    let back = reconstruct(md, &nu)?;
    let gap = back.max_gap(u);
    if gap > md.tol {
        return Err(MartinError::RepresentationMismatch { gap });
    }
    Ok(nu)
}

/// Outcome of [`is_extremal`].
#[derive(Clone, Debug, PartialEq)]
pub struct Extremality {
    pub extremal: bool,
    /// Column class whose column equals `u`, when extremal.
    pub class: Option<usize>,
    /// `u = v₁ ⊕ v₂` with both terms super-harmonic and different from `u`.
    pub witness: Option<(TropicalVector, TropicalVector)>,
}

/// Whether a normalized super-harmonic `u` is an extremal generator, i.e. a
/// column of `K`; otherwise a verified two-term split.
pub fn is_extremal(md: &MartinData, u: &TropicalVector) -> Result<Extremality, MartinError> {
    md.check_len(u)?;
    if let Some(i) = md.first_superharmonic_violation(u) {
        return Err(MartinError::VectorNotSuperharmonic { node: md.label(i).to_string() });
    }
    let pairing = md.pi.row.dot(u);
    if !pairing.approx_eq(Trop::ONE, md.tol) {
        return Err(MartinError::NotNormalized { value: pairing.0 });
    }
    for c in 0..md.column_classes.len() {
        if md.column(md.representative(c)).approx_eq(u, md.tol) {
            return Ok(Extremality { extremal: true, class: Some(c), witness: None });
        }
    }
    // prune atoms whose removal leaves u unchanged; what remains is irredundant
    let nu = mu(md, u)?;
    let mut kept: Vec<Atom> = nu.atoms.into_iter().filter(|a| !a.density.is_zero()).collect();
    let mut k = 0;
    while k < kept.len() {
        let mut trial = kept.clone();
        trial.remove(k);
        let back = reconstruct(md, &RepresentingMeasure { atoms: trial.clone() })?;
        if back.approx_eq(u, md.tol) {
            kept = trial;
        } else {
            k += 1;
        }
    }
    let first = RepresentingMeasure { atoms: kept[..1].to_vec() };
    let rest = RepresentingMeasure { atoms: kept[1..].to_vec() };
    let v1 = reconstruct(md, &first)?;
    let v2 = reconstruct(md, &rest)?;
    let gap = v1.oplus(&v2).max_gap(u);
    if gap > md.tol || v1.approx_eq(u, md.tol) || v2.approx_eq(u, md.tol) {
        return Err(MartinError::RepresentationMismatch { gap });
    }
    Ok(Extremality { extremal: false, class: None, witness: Some((v1, v2)) })
}

#[cfg(test)]
mod tests {
    use super::super::tests::example;
    use super::super::{martin_data, PiSpec};
    use super::*;
    use crate::tropical::{numbered_labels, TropicalMatrix};

    fn z_md() -> MartinData {
        let labels: Vec<String> = (-3i64..=3).map(|i| i.to_string()).collect();
        let arcs = (0..6).flat_map(|k| [(k, k + 1, -1.0), (k + 1, k, -1.0)]);
        let a = TropicalMatrix::from_arcs(labels, arcs).unwrap();
        martin_data(&a, PiSpec::Basepoint("0".into())).unwrap()
    }

    #[test]
    fn mu_on_recurrent_column() {
        let md = martin_data(&example(4, true), PiSpec::Basepoint("0".into())).unwrap();
        let nu = mu(&md, &md.column(0)).unwrap();
        assert_eq!(nu.density_of(0), Some(Trop::ONE));
        assert_eq!(reconstruct(&md, &nu).unwrap(), md.column(0));
    }

    #[test]
    fn mu_is_homogeneous_and_matches_formula() {
        let md = z_md();
        let u = TropicalVector::from_values((-3..=3).map(|i| i as f64));
        assert!(md.is_superharmonic(&u));
        let nu = mu(&md, &u).unwrap();
        for (idx, j) in (-3i64..=3).enumerate() {
            let pi_j = -(j.abs() as f64);
            assert_eq!(nu.density_of(idx), Some(Trop(pi_j + j as f64)));
        }
        let scaled = mu(&md, &u.scale(Trop(2.0))).unwrap();
        for (a, b) in nu.atoms.iter().zip(&scaled.atoms) {
            assert_eq!(b.density, a.density * Trop(2.0));
        }
        assert_eq!(reconstruct(&md, &nu).unwrap(), u);
    }

    #[test]
    fn reconstruct_trivial_cases() {
        let md = z_md();
        let empty = RepresentingMeasure {
            atoms: vec![Atom { node: 0, label: "-3".into(), density: Trop::ZERO }],
        };
        assert!(reconstruct(&md, &empty).unwrap().is_zero());
        let single = RepresentingMeasure {
            atoms: vec![Atom { node: 2, label: "-1".into(), density: Trop::ONE }],
        };
        assert_eq!(reconstruct(&md, &single).unwrap(), md.column(2));
        let top = RepresentingMeasure {
            atoms: vec![Atom { node: 2, label: "-1".into(), density: Trop::TOP }],
        };
        assert!(matches!(reconstruct(&md, &top), Err(MartinError::UnboundedDensity { .. })));
    }

    #[test]
    fn decompose_example2_recurrent_column() {
        let md = martin_data(&example(4, true), PiSpec::Basepoint("0".into())).unwrap();
        let nu = decompose_harmonic(&md, &md.column(0)).unwrap();
        assert_eq!(nu.atoms.len(), 1);
        assert_eq!(nu.atoms[0].node, 0);
        assert_eq!(nu.atoms[0].density, Trop::ONE);
    }

    #[test]
    fn decompose_rejections() {
        let md1 = martin_data(&example(4, false), PiSpec::Basepoint("0".into())).unwrap();
        let ones = TropicalVector::constant(4, 0.0);
        assert!(matches!(
            decompose_harmonic(&md1, &ones),
            Err(MartinError::NotHarmonic { .. }) | Err(MartinError::NoMinimalSpace)
        ));
        assert!(matches!(
            decompose_harmonic(&md1, &TropicalVector::zero(4)),
            Err(MartinError::ZeroVector)
        ));
    }

    #[test]
    fn extremality_on_two_classes() {
        // two zero loops joined by a −2 arc each way
        let a = TropicalMatrix::from_arcs(
            numbered_labels(2),
            [(0, 0, 0.0), (1, 1, 0.0), (0, 1, -2.0), (1, 0, -2.0)],
        )
        .unwrap();
        let md = martin_data(&a, PiSpec::Basepoint("0".into())).unwrap();
        assert_eq!(minimal_martin_finite(&md), vec![0, 1]);
        for j in 0..2 {
            let e = is_extremal(&md, &md.column(j)).unwrap();
            assert!(e.extremal);
        }
        // K_·0 = (0, −2), K_·1 = (0, 2); mixing with weight −2 gives (0, 0)
        let u = md.column(0).oplus(&md.column(1).scale(Trop(-2.0)));
        assert_eq!(u.values(), vec![0.0, 0.0]);
        let e = is_extremal(&md, &u).unwrap();
        assert!(!e.extremal);
        let (v1, v2) = e.witness.unwrap();
        assert_eq!(v1.oplus(&v2), u);
        assert_ne!(v1, u);
        assert_ne!(v2, u);
        let not_norm = u.scale(Trop(1.0));
        assert!(matches!(is_extremal(&md, &not_norm), Err(MartinError::NotNormalized { .. })));
    }
}
