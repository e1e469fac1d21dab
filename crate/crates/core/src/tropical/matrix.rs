use std::collections::HashMap;

use super::scalar::{approx_eq, gap, Trop};
use super::vector::TropicalVector;
use super::TropicalError;

/// Fill ratio above which storage switches to a dense array.
const DENSE_FILL: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
enum Storage {
    /// Row lists of `(column, weight)` sorted by column; absent entries are 𝟘.
    Sparse(Vec<Vec<(usize, f64)>>),
    /// Row-major, −∞ for 𝟘.
    Dense(Vec<f64>),
}

/// A square max-plus kernel over an ordered, labelled node set.
#[derive(Clone, Debug, PartialEq)]
pub struct TropicalMatrix {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    storage: Storage,
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>, TropicalError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(TropicalError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

/// Labels `"0"`, `"1"`, …, `"n-1"`.
pub fn numbered_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl TropicalMatrix {
    /// The all-𝟘 matrix.
    pub fn zeros(labels: Vec<String>) -> Result<Self, TropicalError> {
        let n = labels.len();
        Self::from_arcs(labels, std::iter::empty()).map(|m| {
            debug_assert_eq!(m.n(), n);
            m
        })
    }

    /// Build from arcs `(i, j, w)`; repeated arcs are combined with ⊕.
    ///
    /// +∞ and NaN weights are rejected; −∞ arcs are dropped.
    pub fn from_arcs<I>(labels: Vec<String>, arcs: I) -> Result<Self, TropicalError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (i, j, w) in arcs {
            if i >= n || j >= n {
                return Err(TropicalError::IndexOutOfRange { index: i.max(j), n });
            }
            if w.is_nan() || w == f64::INFINITY {
                return Err(TropicalError::InvalidEntry { row: i, col: j, value: w });
            }
            if w == f64::NEG_INFINITY {
                continue;
            }
            rows[i].push((j, w));
        }
        for row in rows.iter_mut() {
            row.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.total_cmp(&a.1)));
            row.dedup_by_key(|e| e.0);
        }
        Ok(Self::from_rows_unchecked(labels, index, rows))
    }

    /// Build from a dense table (−∞ for 𝟘).
    pub fn from_dense(labels: Vec<String>, rows: &[Vec<f64>]) -> Result<Self, TropicalError> {
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(TropicalError::DimensionMismatch { expected: n, found: rows.len() });
        }
        let arcs = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &w)| (i, j, w)));
        Self::from_arcs(labels, arcs)
    }

    /// Dense constructor that admits +∞ (closure results only).
    pub(crate) fn from_dense_unchecked(labels: Vec<String>, data: Vec<f64>) -> Self {
        let index = index_labels(&labels).expect("labels already validated");
        let n = labels.len();
        debug_assert_eq!(data.len(), n * n);
        let nnz = data.iter().filter(|v| **v != f64::NEG_INFINITY).count();
        let storage = if n > 0 && (nnz as f64) > DENSE_FILL * (n * n) as f64 {
            Storage::Dense(data)
        } else {
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .filter_map(|j| {
                            let v = data[i * n + j];
                            (v != f64::NEG_INFINITY).then_some((j, v))
                        })
                        .collect()
                })
                .collect();
            Storage::Sparse(rows)
        };
        TropicalMatrix { labels, index, storage }
    }

    fn from_rows_unchecked(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        rows: Vec<Vec<(usize, f64)>>,
    ) -> Self {
        let n = labels.len();
        let nnz: usize = rows.iter().map(Vec::len).sum();
        let storage = if n > 0 && (nnz as f64) > DENSE_FILL * (n * n) as f64 {
            let mut data = vec![f64::NEG_INFINITY; n * n];
            for (i, row) in rows.iter().enumerate() {
                for &(j, w) in row {
                    data[i * n + j] = w;
                }
            }
            Storage::Dense(data)
        } else {
            Storage::Sparse(rows)
        };
        TropicalMatrix { labels, index, storage }
    }

    /// Max-plus identity: 𝟙 on the diagonal, 𝟘 elsewhere.
    pub fn identity(labels: Vec<String>) -> Result<Self, TropicalError> {
        let n = labels.len();
        Self::from_arcs(labels, (0..n).map(|i| (i, i, 0.0)))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        match &self.storage {
            Storage::Dense(d) => d[i * self.n() + j],
            Storage::Sparse(rows) => rows[i]
                .binary_search_by_key(&j, |e| e.0)
                .map(|k| rows[i][k].1)
                .unwrap_or(f64::NEG_INFINITY),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Trop {
        Trop(self.value(i, j))
    }

    /// Non-𝟘 entries of row `i` as `(column, weight)`.
    pub fn row(&self, i: usize) -> Vec<(usize, f64)> {
        match &self.storage {
            Storage::Sparse(rows) => rows[i].clone(),
            Storage::Dense(d) => {
                let n = self.n();
                d[i * n..(i + 1) * n]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != f64::NEG_INFINITY)
                    .map(|(j, v)| (j, *v))
                    .collect()
            }
        }
    }

    /// Visit each non-𝟘 entry of row `i`.
    pub fn for_each_in_row<F: FnMut(usize, f64)>(&self, i: usize, mut f: F) {
        match &self.storage {
            Storage::Sparse(rows) => rows[i].iter().for_each(|&(j, w)| f(j, w)),
            Storage::Dense(d) => {
                let n = self.n();
                for (j, &w) in d[i * n..(i + 1) * n].iter().enumerate() {
                    if w != f64::NEG_INFINITY {
                        f(j, w);
                    }
                }
            }
        }
    }

    /// All non-𝟘 entries as `(i, j, w)`, row-major.
    pub fn arcs(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            self.for_each_in_row(i, |j, w| out.push((i, j, w)));
        }
        out
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Sparse(rows) => rows.iter().map(Vec::len).sum(),
            Storage::Dense(d) => d.iter().filter(|v| **v != f64::NEG_INFINITY).count(),
        }
    }

    pub fn has_top(&self) -> bool {
        self.arcs().iter().any(|a| a.2 == f64::INFINITY)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.value(i, j)).collect())
            .collect()
    }

    pub(crate) fn dense_data(&self) -> Vec<f64> {
        match &self.storage {
            Storage::Dense(d) => d.clone(),
            Storage::Sparse(_) => self.to_dense().concat(),
        }
    }

    pub fn column(&self, j: usize) -> TropicalVector {
        (0..self.n()).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vector(&self, i: usize) -> TropicalVector {
        (0..self.n()).map(|j| self.get(i, j)).collect()
    }

    fn check_conforming(&self, other: &TropicalMatrix) -> Result<(), TropicalError> {
        if self.n() != other.n() {
            return Err(TropicalError::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        if self.labels != other.labels {
            return Err(TropicalError::LabelMismatch);
        }
        Ok(())
    }

    /// Max-plus product `self ⊙ other`.
    pub fn mat_mul(&self, other: &TropicalMatrix) -> Result<TropicalMatrix, TropicalError> {
        self.check_conforming(other)?;
        let n = self.n();
        let other_rows: Vec<Vec<(usize, f64)>> = (0..n).map(|k| other.row(k)).collect();
        let mut data = vec![f64::NEG_INFINITY; n * n];
        for i in 0..n {
            let out = &mut data[i * n..(i + 1) * n];
            self.for_each_in_row(i, |k, a| {
                for &(j, b) in &other_rows[k] {
                    let v = (Trop(a) * Trop(b)).0;
                    if v > out[j] {
                        out[j] = v;
                    }
                }
            });
        }
        Ok(Self::from_dense_unchecked(self.labels.clone(), data))
    }

    /// `(A u)_i = ⊕_j A_ij ⊙ u_j`.
    pub fn mat_vec(&self, u: &TropicalVector) -> Result<TropicalVector, TropicalError> {
        if u.len() != self.n() {
            return Err(TropicalError::DimensionMismatch { expected: self.n(), found: u.len() });
        }
        Ok((0..self.n())
            .map(|i| {
                let mut acc = Trop::ZERO;
                self.for_each_in_row(i, |j, w| acc = acc + Trop(w) * u.get(j));
                acc
            })
            .collect())
    }

    /// `(π A)_j = ⊕_i π_i ⊙ A_ij`.
    pub fn vec_mat(&self, pi: &TropicalVector) -> Result<TropicalVector, TropicalError> {
        if pi.len() != self.n() {
            return Err(TropicalError::DimensionMismatch { expected: self.n(), found: pi.len() });
        }
        let mut out = vec![Trop::ZERO; self.n()];
        for i in 0..self.n() {
            let p = pi.get(i);
            self.for_each_in_row(i, |j, w| out[j] = out[j] + p * Trop(w));
        }
        Ok(TropicalVector(out))
    }

    /// Entrywise ⊕.
    pub fn oplus(&self, other: &TropicalMatrix) -> Result<TropicalMatrix, TropicalError> {
        self.check_conforming(other)?;
        let mut data = self.dense_data();
        for (i, j, w) in other.arcs() {
            let k = i * self.n() + j;
            data[k] = data[k].max(w);
        }
        Ok(Self::from_dense_unchecked(self.labels.clone(), data))
    }

    pub fn transpose(&self) -> TropicalMatrix {
        let n = self.n();
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (i, j, w) in self.arcs() {
            rows[j].push((i, w));
        }
        Self::from_rows_unchecked(self.labels.clone(), self.index.clone(), rows)
    }

    /// Apply `f` to every non-𝟘 entry (𝟘 stays 𝟘).
    pub fn map_entries<F: Fn(f64) -> f64>(&self, f: F) -> TropicalMatrix {
        let n = self.n();
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (i, j, w) in self.arcs() {
            rows[i].push((j, f(w)));
        }
        Self::from_rows_unchecked(self.labels.clone(), self.index.clone(), rows)
    }

    /// `λ⁻¹ ⊙ A`, i.e. every arc weight minus `lambda`.
    pub fn shift(&self, lambda: f64) -> TropicalMatrix {
        self.map_entries(|w| w - lambda)
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn principal(&self, indices: &[usize]) -> Result<TropicalMatrix, TropicalError> {
        let labels: Vec<String> = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let pos: HashMap<usize, usize> = indices.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut arcs = Vec::new();
        for (a, &i) in indices.iter().enumerate() {
            self.for_each_in_row(i, |j, w| {
                if let Some(&b) = pos.get(&j) {
                    arcs.push((a, b, w));
                }
            });
        }
        let index = index_labels(&labels)?;
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); labels.len()];
        for (a, b, w) in arcs {
            rows[a].push((b, w));
        }
        for r in rows.iter_mut() {
            r.sort_by_key(|e| e.0);
        }
        Ok(Self::from_rows_unchecked(labels, index, rows))
    }

    /// Same values (not necessarily same labels) up to `tol`.
    pub fn approx_eq(&self, other: &TropicalMatrix, tol: f64) -> bool {
        self.n() == other.n()
            && (0..self.n())
                .all(|i| (0..self.n()).all(|j| approx_eq(self.value(i, j), other.value(i, j), tol)))
    }

    /// Largest entrywise gap.
    pub fn max_gap(&self, other: &TropicalMatrix) -> f64 {
        let mut g: f64 = 0.0;
        for i in 0..self.n() {
            for j in 0..self.n() {
                g = g.max(gap(self.value(i, j), other.value(i, j)));
            }
        }
        g
    }

    /// Every finite entry, for numeric-mode detection.
    pub fn finite_values(&self) -> Vec<f64> {
        self.arcs().into_iter().map(|a| a.2).filter(|w| w.is_finite()).collect()
    }
}
