//! Brute-force oracles and random kernel generators shared by the
//! integration tests. Nothing here calls the closure or circuit-mean code
//! under test.

#![allow(dead_code)]

use maxplus_martin::tropical::{numbered_labels, TropicalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NEG: f64 = f64::NEG_INFINITY;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense integer matrix, each arc present with probability `density`,
/// weights uniform in `lo..=hi`.
pub fn random_dense(rng: &mut ChaCha8Rng, n: usize, density: f64, lo: i64, hi: i64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| if rng.random_bool(density) { rng.random_range(lo..=hi) as f64 } else { NEG })
                .collect()
        })
        .collect()
}

pub fn to_matrix(d: &[Vec<f64>]) -> TropicalMatrix {
    TropicalMatrix::from_dense(numbered_labels(d.len()), d).expect("finite or -inf entries")
}

/// `A*_{ij}` as the best weight over all elementary paths from `i` to `j`
/// (the empty path for `i = j`), by exhaustive depth-first search. Valid
/// when no circuit has positive weight.
pub fn path_sum_star(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut best = vec![vec![NEG; n]; n];
    fn walk(a: &[Vec<f64>], at: usize, weight: f64, seen: &mut Vec<bool>, row: &mut [f64]) {
        row[at] = row[at].max(weight);
        for next in 0..a.len() {
            if a[at][next] > NEG && !seen[next] {
                seen[next] = true;
                walk(a, next, weight + a[at][next], seen, row);
                seen[next] = false;
            }
        }
    }
    for (i, row) in best.iter_mut().enumerate() {
        let mut seen = vec![false; n];
        seen[i] = true;
        walk(a, i, 0.0, &mut seen, row);
        // circuits back to i: the empty path already gives 0 ≥ any circuit
    }
    best
}

pub fn dense_mul(x: &[Vec<f64>], y: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] + y[k][j]).fold(NEG, f64::max)).collect())
        .collect()
}

/// Maximal circuit mean as an exact fraction `(weight, length)`, from the
/// traces of `A, A², …, Aⁿ`; `None` for acyclic matrices.
pub fn trace_power_mean(a: &[Vec<f64>]) -> Option<(f64, usize)> {
    let n = a.len();
    let mut power = a.to_vec();
    let mut best: Option<(f64, usize)> = None;
    for k in 1..=n {
        let tr = (0..n).map(|i| power[i][i]).fold(NEG, f64::max);
        if tr > NEG {
            // compare tr/k with w/l exactly: tr·l vs w·k on integers
            best = match best {
                Some((w, l)) if w * k as f64 >= tr * l as f64 => Some((w, l)),
                _ => Some((tr, k)),
            };
        }
        power = dense_mul(&power, a);
    }
    best
}

/// A kernel whose basepoint `0` reaches every node: a chain `0 → 1 → … → n−1`
/// with random weights in `[−3, 0]`, plus random extra arcs.
pub fn reachable_kernel(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<Vec<f64>> {
    let mut d = random_dense(rng, n, density, -3, 0);
    for i in 0..n.saturating_sub(1) {
        if d[i][i + 1] == NEG {
            d[i][i + 1] = rng.random_range(-3..=0) as f64;
        }
    }
    d
}

/// Like [`reachable_kernel`] but with zero-weight loops at `loops` distinct
/// nodes, so ρ = 0 and there are recurrent nodes. Other loops are removed
/// and off-diagonal weights are ≤ −1, so each zero loop is its own
/// recurrence class.
pub fn recurrent_kernel(rng: &mut ChaCha8Rng, n: usize, density: f64, loops: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut d = reachable_kernel(rng, n, density);
    for (i, row) in d.iter_mut().enumerate() {
        for (j, w) in row.iter_mut().enumerate() {
            if i == j {
                *w = NEG;
            } else if *w == 0.0 {
                *w = -1.0;
            }
        }
    }
    let mut nodes: Vec<usize> = (0..n).collect();
    let mut chosen = Vec::new();
    for _ in 0..loops.min(n) {
        let k = rng.random_range(0..nodes.len());
        chosen.push(nodes.swap_remove(k));
    }
    for &i in &chosen {
        d[i][i] = 0.0;
    }
    chosen.sort();
    (d, chosen)
}
