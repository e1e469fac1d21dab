use std::collections::BTreeSet;

use super::norm::{dot, PolyhedralNorm};
use super::BusemannError;

/// Relative tolerance grouping near-ties in `argmax_i x'_i · y`.
pub const FACE_TIE_TOL: f64 = 1e-12;

/// `J = argmax_i x'_i · y`: the extreme points of the face of the dual
/// ball exposed by `y`.
pub fn face_from_direction(norm: &PolyhedralNorm, y: &[f64]) -> Result<Vec<usize>, BusemannError> {
    if y.len() != norm.dim() {
        return Err(BusemannError::DimensionMismatch { expected: norm.dim(), found: y.len() });
    }
    if y.iter().all(|c| *c == 0.0) {
        return Err(BusemannError::ZeroDirection);
    }
    Ok(argmax(norm, y))
}

fn argmax(norm: &PolyhedralNorm, y: &[f64]) -> Vec<usize> {
    let vals: Vec<f64> = norm.duals().iter().map(|d| dot(d, y)).collect();
    let best = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scale = y.iter().map(|c| c.abs()).fold(0.0, f64::max)
        * norm.duals().iter().flatten().map(|c| c.abs()).fold(0.0, f64::max);
    let tol = FACE_TIE_TOL * scale.max(1.0);
    (0..vals.len()).filter(|&i| vals[i] >= best - tol).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaceEnumeration {
    /// Proper faces as sorted index sets, ordered by size then indices.
    pub faces: Vec<Vec<usize>>,
    /// True when faces were found by sampling directions (dimension > 3).
    pub approximate: bool,
}

/// All proper faces of the dual ball.
///
/// Exact in dimensions 1–3 (angular order in the plane, facet/edge/vertex
/// enumeration in space). Above that, faces are collected from the
/// directions in `{−3, …, 3}ⁿ` and the result is flagged approximate.
pub fn enumerate_faces(norm: &PolyhedralNorm) -> FaceEnumeration {
    let n = norm.duals().len();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let approximate = match norm.dim() {
        1 => {
            faces.extend((0..n).map(|i| vec![i]));
            false
        }
        2 => {
            let mut order: Vec<usize> = (0..n).collect();
            let angle = |i: usize| norm.dual(i)[1].atan2(norm.dual(i)[0]);
            order.sort_by(|a, b| angle(*a).total_cmp(&angle(*b)));
            for k in 0..n {
                faces.insert(vec![order[k]]);
                let mut edge = vec![order[k], order[(k + 1) % n]];
                edge.sort();
                faces.insert(edge);
            }
            false
        }
        3 => {
            let facets = facets_3d(norm);
            faces.extend((0..n).map(|i| vec![i]));
            for (a, fa) in facets.iter().enumerate() {
                for fb in &facets[a + 1..] {
                    let common: Vec<usize> = fa.iter().filter(|i| fb.contains(i)).copied().collect();
                    if common.len() == 2 {
                        faces.insert(common);
                    }
                }
            }
            faces.extend(facets);
            false
        }
        d => {
            let mut dir = vec![-3i64; d];
            loop {
                if dir.iter().any(|c| *c != 0) {
                    let y: Vec<f64> = dir.iter().map(|c| *c as f64).collect();
                    faces.insert(argmax(norm, &y));
                }
                // odometer over {−3..3}^d
                let mut k = 0;
                while k < d && dir[k] == 3 {
                    dir[k] = -3;
                    k += 1;
                }
                if k == d {
                    break;
                }
                dir[k] += 1;
            }
            faces.extend((0..n).map(|i| vec![i]));
            true
        }
    };
    let mut faces: Vec<Vec<usize>> = faces.into_iter().collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    FaceEnumeration { faces, approximate }
}

fn cross(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Facets of a 3-polytope as the maximal coplanar vertex sets on supporting planes.
fn facets_3d(norm: &PolyhedralNorm) -> Vec<Vec<usize>> {
    let p = norm.duals();
    let n = p.len();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let sub = |a: &[f64], b: &[f64]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = cross(&sub(&p[j], &p[i]), &sub(&p[k], &p[i]));
                let len = dot(&normal, &normal).sqrt();
                if len < 1e-12 {
                    continue;
                }
                for sign in [1.0, -1.0] {
                    let u: Vec<f64> = normal.iter().map(|c| sign * c / len).collect();
                    let level = dot(&u, &p[i]);
                    let vals: Vec<f64> = p.iter().map(|v| dot(&u, v)).collect();
                    if vals.iter().all(|v| *v <= level + 1e-9) {
                        let on: Vec<usize> = (0..n).filter(|&m| (vals[m] - level).abs() <= 1e-9).collect();
                        facets.insert(on);
                    }
                }
            }
        }
    }
    facets.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(norm: &PolyhedralNorm, face: &[usize]) -> Vec<Vec<f64>> {
        face.iter().map(|&i| norm.dual(i).to_vec()).collect()
    }

    #[test]
    fn exposed_faces() {
        let linf = PolyhedralNorm::linf(2);
        assert_eq!(named(&linf, &face_from_direction(&linf, &[1.0, 0.0]).unwrap()), vec![vec![1.0, 0.0]]);
        assert_eq!(
            named(&linf, &face_from_direction(&linf, &[1.0, 1.0]).unwrap()),
            vec![vec![1.0, 0.0], vec![0.0, 1.0]]
        );
        let l1 = PolyhedralNorm::l1(2);
        let mut f = named(&l1, &face_from_direction(&l1, &[1.0, 0.0]).unwrap());
        f.sort_by(|a, b| a[1].total_cmp(&b[1]));
        assert_eq!(f, vec![vec![1.0, -1.0], vec![1.0, 1.0]]);
        assert_eq!(face_from_direction(&l1, &[0.0, 0.0]), Err(BusemannError::ZeroDirection));
    }

    #[test]
    fn counts() {
        for norm in [PolyhedralNorm::linf(2), PolyhedralNorm::l1(2)] {
            let e = enumerate_faces(&norm);
            assert_eq!(e.faces.len(), 8);
            assert!(!e.approximate);
        }
        // cube: 8 vertices, 12 edges, 6 facets; octahedron: 6 + 12 + 8
        assert_eq!(enumerate_faces(&PolyhedralNorm::l1(3)).faces.len(), 26);
        assert_eq!(enumerate_faces(&PolyhedralNorm::linf(3)).faces.len(), 26);
        assert_eq!(enumerate_faces(&PolyhedralNorm::linf(1)).faces.len(), 2);
        let e = enumerate_faces(&PolyhedralNorm::linf(4));
        assert!(e.approximate);
        // cross-polytope in ℝ⁴ has 3⁴ − 1 = 80 proper faces, all exposed by small integer directions
        assert_eq!(e.faces.len(), 80);
    }

    #[test]
    fn angular_sweep_covers_the_faces() {
        let hex = PolyhedralNorm::new(
            (0..6)
                .map(|k| {
                    let a = std::f64::consts::PI * k as f64 / 3.0;
                    vec![a.cos(), a.sin()]
                })
                .collect(),
        )
        .unwrap();
        for norm in [PolyhedralNorm::linf(2), PolyhedralNorm::l1(2), hex] {
            let exact: BTreeSet<Vec<usize>> = enumerate_faces(&norm).faces.into_iter().collect();
            let mut swept = BTreeSet::new();
            for k in 0..721 {
                let a = 2.0 * std::f64::consts::PI * k as f64 / 720.0;
                swept.insert(face_from_direction(&norm, &[a.cos(), a.sin()]).unwrap());
            }
            // edge normals lie on the half-degree lattice for these three norms
            assert_eq!(swept, exact);
        }
    }
}
