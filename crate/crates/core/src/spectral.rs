//! Maximal circuit mean, normalized kernel, recurrent nodes and classes.
//!
//! ρ(A) is computed by Karp's algorithm on each strongly connected
//! component and kept as an exact `weight / length` pair, so that the
//! normalized kernel can be scaled back to integers: recurrence is decided
//! on `len·A − weight`, whose plus-closure diagonal is exactly 0 on
//! recurrent nodes when the weights are integers.

use std::cmp::Ordering;
use std::collections::VecDeque;

use thiserror::Error;

use crate::tropical::closure::{kleene_plus, single_source};
use crate::tropical::{NumericMode, Trop, TropicalMatrix, TropicalVector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("normalized closure diverges at node {node}; weights are numerically inconsistent")]
    DivergentNormalized { node: String },
    #[error("maximal circuit mean {rho} exceeds 0 along circuit {circuit:?}")]
    RhoBoundViolated { rho: f64, circuit: Vec<String> },
    #[error("row has length {found}, kernel has {expected} nodes")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A circuit mean kept as the exact ratio `weight / length`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircuitMean {
    pub weight: f64,
    pub length: usize,
}

impl CircuitMean {
    pub fn value(&self) -> f64 {
        self.weight / self.length as f64
    }

    /// Exact comparison by cross-multiplication.
    pub fn cmp_exact(&self, other: &CircuitMean) -> Ordering {
        (self.weight * other.length as f64).total_cmp(&(other.weight * self.length as f64))
    }
}

/// Spectral summary of a finite kernel.
#[derive(Clone, Debug)]
pub struct SpectralData {
    /// ρ(A); 𝟘 iff the graph is acyclic.
    pub rho: Trop,
    pub rho_fraction: Option<CircuitMean>,
    /// Ã = ρ(A)⁻¹A; absent when ρ(A) = 𝟘.
    pub normalized: Option<TropicalMatrix>,
    /// Recurrent nodes in index order.
    pub recurrent: Vec<usize>,
    /// Recurrence classes, each sorted, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
}

impl SpectralData {
    pub fn is_recurrent(&self, i: usize) -> bool {
        self.recurrent.binary_search(&i).is_ok()
    }

    pub fn class_of(&self, i: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&i))
    }
}

/// Strongly connected components (iterative Tarjan), in reverse topological order.
pub fn strongly_connected_components(a: &TropicalMatrix) -> Vec<Vec<usize>> {
    let n = a.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| a.row(i).into_iter().map(|e| e.0).collect()).collect();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Karp on one strongly connected component.
fn karp_component(a: &TropicalMatrix, comp: &[usize]) -> Option<CircuitMean> {
    let m = comp.len();
    if m == 1 {
        let w = a.value(comp[0], comp[0]);
        return (w != f64::NEG_INFINITY).then_some(CircuitMean { weight: w, length: 1 });
    }
    let mut local = vec![usize::MAX; a.n()];
    for (k, &v) in comp.iter().enumerate() {
        local[v] = k;
    }
    let arcs: Vec<(usize, usize, f64)> = comp
        .iter()
        .flat_map(|&u| {
            a.row(u)
                .into_iter()
                .filter(|e| local[e.0] != usize::MAX)
                .map(move |(v, w)| (u, v, w))
        })
        .map(|(u, v, w)| (local[u], local[v], w))
        .collect();
    // d[k][v]: best weight of a k-arc walk from comp[0] to v
    let mut d = vec![vec![f64::NEG_INFINITY; m]; m + 1];
    d[0][0] = 0.0;
    for k in 1..=m {
        let (prev, cur) = d.split_at_mut(k);
        let (prev, cur) = (&prev[k - 1], &mut cur[0]);
        for &(u, v, w) in &arcs {
            if prev[u] != f64::NEG_INFINITY && prev[u] + w > cur[v] {
                cur[v] = prev[u] + w;
            }
        }
    }
    let mut best: Option<CircuitMean> = None;
    for v in 0..m {
        if d[m][v] == f64::NEG_INFINITY {
            continue;
        }
        let mut worst: Option<CircuitMean> = None;
        for k in 0..m {
            if d[k][v] == f64::NEG_INFINITY {
                continue;
            }
            let c = CircuitMean { weight: d[m][v] - d[k][v], length: m - k };
            if worst.is_none_or(|w| c.cmp_exact(&w) == Ordering::Less) {
                worst = Some(c);
            }
        }
        if let Some(c) = worst {
            if best.is_none_or(|b| c.cmp_exact(&b) == Ordering::Greater) {
                best = Some(c);
            }
        }
    }
    best
}

/// ρ(A) as an exact ratio, `None` when the graph is acyclic.
pub fn max_circuit_mean_fraction(a: &TropicalMatrix) -> Option<CircuitMean> {
    strongly_connected_components(a)
        .iter()
        .filter_map(|c| karp_component(a, c))
        .max_by(|x, y| x.cmp_exact(y))
}

/// ρ(A) = max over circuits of weight / length; 𝟘 when there is no circuit.
pub fn max_circuit_mean(a: &TropicalMatrix) -> Trop {
    max_circuit_mean_fraction(a).map_or(Trop::ZERO, |c| Trop(c.value()))
}

/// `len·A − weight`: the normalized kernel scaled by the critical length.
fn scaled_normalized(a: &TropicalMatrix, rho: CircuitMean) -> TropicalMatrix {
    let len = rho.length as f64;
    a.map_entries(|w| len * w - rho.weight)
}

/// Spectral data with the tolerance inferred from the weights.
pub fn spectral_data(a: &TropicalMatrix) -> Result<SpectralData, SpectralError> {
    spectral_data_with_tol(a, NumericMode::detect(a.finite_values()).tol())
}

pub fn spectral_data_with_tol(a: &TropicalMatrix, tol: f64) -> Result<SpectralData, SpectralError> {
    let Some(rho) = max_circuit_mean_fraction(a) else {
        return Ok(SpectralData {
            rho: Trop::ZERO,
            rho_fraction: None,
            normalized: None,
            recurrent: Vec::new(),
            classes: Vec::new(),
        });
    };
    let n = a.n();
    let b = scaled_normalized(a, rho);
    let bp = kleene_plus(&b);
    let scaled_tol = tol * rho.length as f64;
    let mut recurrent = Vec::new();
    for i in 0..n {
        let d = bp.value(i, i);
        if d == f64::INFINITY {
            return Err(SpectralError::DivergentNormalized { node: a.label(i).to_string() });
        }
        if d.is_finite() && d.abs() <= scaled_tol {
            recurrent.push(i);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; n];
    for (k, &i) in recurrent.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut class = vec![i];
        assigned[i] = true;
        for &j in &recurrent[k + 1..] {
            if !assigned[j] && (Trop(bp.value(i, j)) * Trop(bp.value(j, i))).0 >= -2.0 * scaled_tol {
                class.push(j);
                assigned[j] = true;
            }
        }
        classes.push(class);
    }
    Ok(SpectralData {
        rho: Trop(rho.value()),
        rho_fraction: Some(rho),
        normalized: Some(a.shift(rho.value())),
        recurrent,
        classes,
    })
}

/// A circuit attaining ρ(A), as a node list starting and ending at the same node.
pub fn critical_circuit(a: &TropicalMatrix) -> Option<Vec<usize>> {
    let rho = max_circuit_mean_fraction(a)?;
    let tol = NumericMode::detect(a.finite_values()).tol() * rho.length as f64;
    let b = scaled_normalized(a, rho);
    let bt = b.transpose();
    let n = a.n();
    for i in 0..n {
        let from_i = single_source(&b, i);
        let to_i = single_source(&bt, i);
        let mut through_i = f64::NEG_INFINITY;
        b.for_each_in_row(i, |v, w| through_i = through_i.max(w + to_i[v]));
        if !(through_i.is_finite() && through_i.abs() <= tol) {
            continue;
        }
        // BFS back to i over arcs lying on a zero-weight circuit through i
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::from([i]);
        let mut seen = vec![false; n];
        seen[i] = true;
        while let Some(u) = queue.pop_front() {
            for (v, w) in b.row(u) {
                let tight = (from_i[u] + w + to_i[v]).abs() <= tol;
                if !tight {
                    continue;
                }
                if v == i {
                    let mut back = vec![u];
                    let mut x = u;
                    while x != i {
                        x = parent[x];
                        back.push(x);
                    }
                    back.reverse();
                    back.push(i);
                    return Some(back);
                }
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    None
}

/// Assertion that ρ(A) ≤ 𝟙 for a kernel carrying a super-harmonic row `pi`.
pub fn check_rho_bound(a: &TropicalMatrix, pi: &TropicalVector) -> Result<bool, SpectralError> {
    if pi.len() != a.n() {
        return Err(SpectralError::DimensionMismatch { expected: a.n(), found: pi.len() });
    }
    let tol = NumericMode::detect(a.finite_values()).tol();
    match max_circuit_mean_fraction(a) {
        Some(c) if c.value() > tol => {
            let circuit = critical_circuit(a)
                .unwrap_or_default()
                .into_iter()
                .map(|i| a.label(i).to_string())
                .collect();
            Err(SpectralError::RhoBoundViolated { rho: c.value(), circuit })
        }
        _ => Ok(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::numbered_labels;

    fn z_truncation(r: i64) -> TropicalMatrix {
        let labels: Vec<String> = (-r..=r).map(|i| i.to_string()).collect();
        let n = labels.len();
        let arcs = (0..n - 1).flat_map(|k| [(k, k + 1, -1.0), (k + 1, k, -1.0)]);
        TropicalMatrix::from_arcs(labels, arcs).unwrap()
    }

    fn example1(n: usize, loop0: bool) -> TropicalMatrix {
        let mut arcs: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 0.0)).collect();
        arcs.extend((1..n).map(|i| (i, 0, -1.0)));
        if loop0 {
            arcs.push((0, 0, 0.0));
        }
        TropicalMatrix::from_arcs(numbered_labels(n), arcs).unwrap()
    }

    #[test]
    fn z_lattice_rho() {
        assert_eq!(max_circuit_mean(&z_truncation(3)), Trop(-1.0));
        // every node sits on a 2-circuit of mean ρ, so the literal definition
        // makes the whole truncation one recurrent class
        let sd = spectral_data(&z_truncation(3)).unwrap();
        assert_eq!(sd.recurrent.len(), 7);
        assert_eq!(sd.classes.len(), 1);
    }

    #[test]
    fn self_loop_rho() {
        let a = TropicalMatrix::from_arcs(numbered_labels(1), [(0, 0, 2.5)]).unwrap();
        assert_eq!(max_circuit_mean(&a), Trop(2.5));
    }

    #[test]
    fn acyclic_has_zero_rho_and_no_recurrence() {
        let a = TropicalMatrix::from_arcs(numbered_labels(3), [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let sd = spectral_data(&a).unwrap();
        assert_eq!(sd.rho, Trop::ZERO);
        assert!(sd.normalized.is_none());
        assert!(sd.recurrent.is_empty());
        assert_eq!(check_rho_bound(&a, &TropicalVector::constant(3, 0.0)), Ok(true));
    }

    #[test]
    fn example1_truncation_rho_is_negative_and_tends_to_zero() {
        // the truncation closes the circuit 0 → 1 → … → R → 0 of mean −1/(R+1)
        for r in [3usize, 10, 40] {
            let c = max_circuit_mean_fraction(&example1(r + 1, false)).unwrap();
            assert_eq!(c.value(), -1.0 / (r as f64 + 1.0));
        }
    }

    #[test]
    fn example2_recurrence() {
        let sd = spectral_data(&example1(4, true)).unwrap();
        assert_eq!(sd.rho, Trop(0.0));
        assert_eq!(sd.recurrent, vec![0]);
        assert_eq!(sd.classes, vec![vec![0]]);
        assert!(check_rho_bound(&example1(4, true), &TropicalVector::constant(4, 0.0)).unwrap());
    }

    #[test]
    fn two_cycle_one_class() {
        let a = TropicalMatrix::from_arcs(numbered_labels(2), [(0, 1, -1.0), (1, 0, -1.0)]).unwrap();
        let sd = spectral_data(&a).unwrap();
        assert_eq!(sd.rho, Trop(-1.0));
        assert_eq!(sd.recurrent, vec![0, 1]);
        assert_eq!(sd.classes, vec![vec![0, 1]]);
    }

    #[test]
    fn rho_bound_violation_has_witness() {
        let a = TropicalMatrix::from_arcs(
            numbered_labels(3),
            [(0, 1, 1.0), (1, 2, 0.0), (2, 0, 0.0), (2, 2, -1.0)],
        )
        .unwrap();
        match check_rho_bound(&a, &TropicalVector::constant(3, 0.0)) {
            Err(SpectralError::RhoBoundViolated { rho, circuit }) => {
                assert!((rho - 1.0 / 3.0).abs() < 1e-12);
                assert_eq!(circuit.first(), circuit.last());
                assert_eq!(circuit.len(), 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sccs_cover_nodes() {
        let a = example1(5, false);
        let comps = strongly_connected_components(&a);
        assert_eq!(comps, vec![vec![0, 1, 2, 3, 4]]);
        let b = TropicalMatrix::from_arcs(numbered_labels(3), [(0, 1, 0.0)]).unwrap();
        assert_eq!(strongly_connected_components(&b).len(), 3);
    }
}
