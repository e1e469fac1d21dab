//! Kleene closures `A* = I ⊕ A ⊕ A² ⊕ ⋯` and `A⁺ = A A*`.
//!
//! The all-pairs closure is a Floyd–Warshall sweep over the completed
//! semiring; single-row/column closures use Dijkstra when every weight is
//! ≤ 𝟙 and a Bellman–Ford pass with +∞ propagation otherwise.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use super::matrix::TropicalMatrix;
use super::scalar::Trop;
use super::vector::TropicalVector;

/// Circuit weights at or below this are treated as 𝟙 rather than divergent,
/// absorbing float round-off on zero-mean circuits. Integer data never hits it.
pub const ROUNDING_GUARD: f64 = 1e-12;

fn star_scalar(a: f64) -> f64 {
    if a > ROUNDING_GUARD {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Floyd–Warshall–Kleene sweep; returns the dense `A⁺`.
fn plus_dense(a: &TropicalMatrix) -> Vec<f64> {
    let n = a.n();
    let mut d = a.dense_data();
    for k in 0..n {
        let c = star_scalar(d[k * n + k]);
        let row_k: Vec<f64> = d[k * n..(k + 1) * n].to_vec();
        for i in 0..n {
            let aik = d[i * n + k];
            if aik == f64::NEG_INFINITY {
                continue;
            }
            let t = Trop(aik) * Trop(c);
            for j in 0..n {
                let v = (t * Trop(row_k[j])).0;
                if v > d[i * n + j] {
                    d[i * n + j] = v;
                }
            }
        }
    }
    d
}

/// `A* = I ⊕ A ⊕ A² ⊕ ⋯`; entries reachable through a positive circuit are +∞.
pub fn kleene_star(a: &TropicalMatrix) -> TropicalMatrix {
    let n = a.n();
    let mut d = plus_dense(a);
    for i in 0..n {
        d[i * n + i] = d[i * n + i].max(0.0);
    }
    TropicalMatrix::from_dense_unchecked(a.labels().to_vec(), d)
}

/// `A⁺ = A A*`.
pub fn kleene_plus(a: &TropicalMatrix) -> TropicalMatrix {
    a.mat_mul(&kleene_star(a)).expect("conforming by construction")
}

#[derive(PartialEq)]
struct Entry(f64, usize);
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Best path weight from `s` to every node following the rows of `adj`,
/// including the empty path (so entry `s` is at least 𝟙).
pub fn single_source(adj: &TropicalMatrix, s: usize) -> Vec<f64> {
    let n = adj.n();
    let nonpositive = adj.arcs().iter().all(|a| a.2 <= 0.0);
    if nonpositive {
        dijkstra(adj, s)
    } else {
        bellman_ford(adj, s, n)
    }
}

fn dijkstra(adj: &TropicalMatrix, s: usize) -> Vec<f64> {
    let n = adj.n();
    let mut best = vec![f64::NEG_INFINITY; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    best[s] = 0.0;
    heap.push(Entry(0.0, s));
    while let Some(Entry(v, i)) = heap.pop() {
        if done[i] || v < best[i] {
            continue;
        }
        done[i] = true;
        adj.for_each_in_row(i, |j, w| {
            let cand = v + w;
            if !done[j] && cand > best[j] {
                best[j] = cand;
                heap.push(Entry(cand, j));
            }
        });
    }
    best
}

fn bellman_ford(adj: &TropicalMatrix, s: usize, n: usize) -> Vec<f64> {
    let arcs = adj.arcs();
    let mut best = vec![f64::NEG_INFINITY; n];
    best[s] = 0.0;
    let mut changed = Vec::new();
    for round in 0..=n {
        changed.clear();
        for &(i, j, w) in &arcs {
            if best[i] == f64::NEG_INFINITY {
                continue;
            }
            let cand = best[i] + w;
            if cand > best[j] + ROUNDING_GUARD {
                best[j] = cand;
                changed.push(j);
            }
        }
        if changed.is_empty() {
            return best;
        }
        if round == n {
            break;
        }
    }
    // anything still improving after n rounds sits downstream of a positive circuit
    let mut queue: VecDeque<usize> = changed.iter().copied().collect();
    for &j in &changed {
        best[j] = f64::INFINITY;
    }
    while let Some(i) = queue.pop_front() {
        adj.for_each_in_row(i, |j, _| {
            if best[j] != f64::INFINITY {
                best[j] = f64::INFINITY;
                queue.push_back(j);
            }
        });
    }
    best
}

/// Row `i` of `A*`.
pub fn star_row(a: &TropicalMatrix, i: usize) -> TropicalVector {
    TropicalVector::from_values(single_source(a, i))
}

/// Column `j` of `A*`; `transposed` must be `a.transpose()` (pass it in to reuse it).
pub fn star_column(transposed: &TropicalMatrix, j: usize) -> TropicalVector {
    TropicalVector::from_values(single_source(transposed, j))
}

/// Column `j` of `A⁺ = A A*`, given the matching star column.
pub fn plus_column(a: &TropicalMatrix, star_col: &TropicalVector) -> TropicalVector {
    a.mat_vec(star_col).expect("conforming by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::matrix::numbered_labels;

    const Z: f64 = f64::NEG_INFINITY;

    fn m(rows: &[Vec<f64>]) -> TropicalMatrix {
        TropicalMatrix::from_dense(numbered_labels(rows.len()), rows).unwrap()
    }

    fn example1(n: usize, loop0: bool) -> TropicalMatrix {
        let mut arcs = Vec::new();
        for i in 0..n {
            if i + 1 < n {
                arcs.push((i, i + 1, 0.0));
            }
            if i >= 1 {
                arcs.push((i, 0, -1.0));
            }
        }
        if loop0 {
            arcs.push((0, 0, 0.0));
        }
        TropicalMatrix::from_arcs(numbered_labels(n), arcs).unwrap()
    }

    #[test]
    fn trivial_closures() {
        assert_eq!(kleene_star(&m(&[vec![Z]])).to_dense(), vec![vec![0.0]]);
        assert_eq!(kleene_plus(&m(&[vec![Z]])).to_dense(), vec![vec![Z]]);
        assert_eq!(kleene_star(&m(&[vec![1.0]])).to_dense(), vec![vec![f64::INFINITY]]);
    }

    #[test]
    fn example1_star_closed_form() {
        let s = kleene_star(&example1(4, false));
        for i in 0..4 {
            for j in 0..4 {
                let want = if i <= j { 0.0 } else { -1.0 };
                assert_eq!(s.value(i, j), want, "({i},{j})");
            }
        }
    }

    #[test]
    fn example2_plus_diagonal() {
        let p = kleene_plus(&example1(4, true));
        assert_eq!(p.value(0, 0), 0.0);
    }

    #[test]
    fn positive_circuit_propagates_only_downstream() {
        // 0 -> 1 (positive loop at 1) -> 2 ; 3 isolated
        let a = TropicalMatrix::from_arcs(
            numbered_labels(4),
            [(0, 1, -5.0), (1, 1, 1.0), (1, 2, -1.0)],
        )
        .unwrap();
        let s = kleene_star(&a);
        assert_eq!(s.value(0, 2), f64::INFINITY);
        assert_eq!(s.value(2, 1), Z);
        assert_eq!(s.value(3, 3), 0.0);
        let row = star_row(&a, 0);
        assert_eq!(row.values(), vec![0.0, f64::INFINITY, f64::INFINITY, Z]);
        let col = star_column(&a.transpose(), 2);
        assert_eq!(col.values(), vec![f64::INFINITY, f64::INFINITY, 0.0, Z]);
    }

    #[test]
    fn single_source_matches_dense_closure() {
        let a = example1(6, true);
        let s = kleene_star(&a);
        let t = a.transpose();
        for i in 0..6 {
            assert_eq!(star_row(&a, i), s.row_vector(i));
            assert_eq!(star_column(&t, i), s.column(i));
            assert_eq!(plus_column(&a, &s.column(i)), kleene_plus(&a).column(i));
        }
    }

    #[test]
    fn closure_identities() {
        let a = m(&[
            vec![-1.0, -2.0, Z],
            vec![Z, Z, -1.0],
            vec![-3.0, 0.0, Z],
        ]);
        let s = kleene_star(&a);
        let p = kleene_plus(&a);
        let id = TropicalMatrix::identity(numbered_labels(3)).unwrap();
        assert_eq!(s, id.oplus(&a.mat_mul(&s).unwrap()).unwrap());
        assert_eq!(p, s.mat_mul(&a).unwrap());
        assert_eq!(s, s.mat_mul(&s).unwrap());
    }
}
