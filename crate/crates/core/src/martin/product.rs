//! Kernels on product node sets: `A = A₁⊗I ⊕ I⊗A₂`.

use crate::tropical::{Trop, TropicalMatrix, TropicalVector};

/// Label of the product node `(a, b)`.
pub fn pair_label(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

fn pair_labels(l1: &[String], l2: &[String]) -> Vec<String> {
    l1.iter().flat_map(|a| l2.iter().map(move |b| pair_label(a, b))).collect()
}

/// `A₁⊗I ⊕ I⊗A₂`, nodes ordered with the first factor major.
pub fn tensor_sum(a1: &TropicalMatrix, a2: &TropicalMatrix) -> TropicalMatrix {
    let (n1, n2) = (a1.n(), a2.n());
    let mut arcs = Vec::new();
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let from = i1 * n2 + i2;
            a1.for_each_in_row(i1, |j1, w| arcs.push((from, j1 * n2 + i2, w)));
            a2.for_each_in_row(i2, |j2, w| arcs.push((from, i1 * n2 + j2, w)));
        }
    }
    TropicalMatrix::from_arcs(pair_labels(a1.labels(), a2.labels()), arcs)
        .expect("finite weights and distinct pair labels")
}

/// `π₁ ⊗ π₂`.
pub fn tensor_row(pi1: &TropicalVector, pi2: &TropicalVector) -> TropicalVector {
    pi1.iter().flat_map(|a| pi2.iter().map(move |b| a * b)).collect()
}

/// Kronecker product `(M₁⊗M₂)_{(i₁,i₂),(j₁,j₂)} = M₁_{i₁j₁} ⊙ M₂_{i₂j₂}`;
/// accepts closures carrying +∞.
pub fn tensor_product(m1: &TropicalMatrix, m2: &TropicalMatrix) -> TropicalMatrix {
    let (n1, n2) = (m1.n(), m2.n());
    let n = n1 * n2;
    let mut data = vec![f64::NEG_INFINITY; n * n];
    for (i1, j1, w1) in m1.arcs() {
        for (i2, j2, w2) in m2.arcs() {
            data[(i1 * n2 + i2) * n + (j1 * n2 + j2)] = (Trop(w1) * Trop(w2)).0;
        }
    }
    TropicalMatrix::from_dense_unchecked(pair_labels(m1.labels(), m2.labels()), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{kleene_star, numbered_labels};

    #[test]
    fn degenerate_sum() {
        let z = TropicalMatrix::from_arcs(numbered_labels(1), [(0, 0, 0.0)]).unwrap();
        let s = tensor_sum(&z, &z);
        assert_eq!(s.n(), 1);
        assert_eq!(s.value(0, 0), 0.0);
        assert_eq!(s.label(0), "(0,0)");
    }

    #[test]
    fn star_of_sum_is_product_of_stars() {
        let a1 = TropicalMatrix::from_arcs(numbered_labels(3), [(0, 1, -1.0), (1, 0, -1.0), (1, 2, -2.0)])
            .unwrap();
        let a2 = TropicalMatrix::from_arcs(numbered_labels(2), [(0, 1, -3.0), (1, 1, 0.0)]).unwrap();
        let lhs = kleene_star(&tensor_sum(&a1, &a2));
        let rhs = tensor_product(&kleene_star(&a1), &kleene_star(&a2));
        assert_eq!(lhs.to_dense(), rhs.to_dense());
        assert_eq!(lhs.labels(), rhs.labels());
    }

    #[test]
    fn row_product() {
        let p = tensor_row(&TropicalVector::from(vec![0.0, -1.0]), &TropicalVector::from(vec![-2.0, 0.0]));
        assert_eq!(p.values(), vec![-2.0, 0.0, -3.0, -1.0]);
    }
}
