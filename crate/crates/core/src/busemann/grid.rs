use super::BusemannError;

/// A regular grid `origin + h·(i₁, …, i_n)`, `0 ≤ i_k < counts[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub origin: Vec<f64>,
    pub h: f64,
    pub counts: Vec<usize>,
}

impl GridSpec {
    pub fn new(origin: Vec<f64>, h: f64, counts: Vec<usize>) -> Result<GridSpec, BusemannError> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(BusemannError::InvalidParameter(format!("grid spacing must be positive, got {h}")));
        }
        if origin.len() != counts.len() || counts.is_empty() {
            return Err(BusemannError::DimensionMismatch { expected: origin.len(), found: counts.len() });
        }
        if counts.contains(&0) {
            return Err(BusemannError::InvalidParameter("empty grid axis".into()));
        }
        Ok(GridSpec { origin, h, counts })
    }

    /// The grid `{−m h, …, m h}ⁿ` with `m = round(extent / h)`.
    pub fn centered(dim: usize, h: f64, extent: f64) -> Result<GridSpec, BusemannError> {
        if !(extent >= 0.0) {
            return Err(BusemannError::InvalidParameter(format!("extent must be >= 0, got {extent}")));
        }
        let m = (extent / h).round() as usize;
        Self::new(vec![-(m as f64) * h; dim], h, vec![2 * m + 1; dim])
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn multi(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for k in (0..self.dim()).rev() {
            out[k] = flat % self.counts[k];
            flat /= self.counts[k];
        }
        out
    }

    pub fn flat(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.counts).fold(0, |acc, (i, c)| acc * c + i)
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi(flat).iter().zip(&self.origin).map(|(i, o)| o + self.h * *i as f64).collect()
    }

    /// `flat` shifted by `offset` grid steps, if still on the grid.
    pub fn shifted(&self, flat: usize, offset: &[i64]) -> Option<usize> {
        let m = self.multi(flat);
        let mut out = Vec::with_capacity(m.len());
        for ((i, d), c) in m.iter().zip(offset).zip(&self.counts) {
            let j = *i as i64 + d;
            if j < 0 || j >= *c as i64 {
                return None;
            }
            out.push(j as usize);
        }
        Some(self.flat(&out))
    }

    /// Whether every node within `steps` grid steps (per axis) is on the grid.
    pub fn has_margin(&self, flat: usize, steps: usize) -> bool {
        self.multi(flat).iter().zip(&self.counts).all(|(i, c)| *i >= steps && i + steps < *c)
    }
}

/// Values on a grid; cells without a valid value are marked.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub spec: GridSpec,
    pub values: Vec<f64>,
    pub valid: Vec<bool>,
}

impl GridFunction {
    pub fn from_fn<F: Fn(&[f64]) -> f64>(spec: GridSpec, f: F) -> GridFunction {
        let values: Vec<f64> = (0..spec.len()).map(|i| f(&spec.point(i))).collect();
        let valid = vec![true; values.len()];
        GridFunction { spec, values, valid }
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|v| **v).count()
    }

    /// `max |self − other − shift|` over cells valid in both.
    pub fn max_deviation(&self, other: &GridFunction, shift: f64) -> f64 {
        (0..self.values.len())
            .filter(|&i| self.valid[i] && other.valid[i])
            .map(|i| (self.values[i] - other.values[i] - shift).abs())
            .fold(0.0, f64::max)
    }

    /// Largest difference quotient between axis neighbours.
    pub fn axis_lipschitz(&self) -> f64 {
        let spec = &self.spec;
        let mut lip: f64 = 0.0;
        for i in 0..spec.len() {
            for k in 0..spec.dim() {
                let mut e = vec![0i64; spec.dim()];
                e[k] = 1;
                if let Some(j) = spec.shifted(i, &e) {
                    if self.values[i].is_finite() && self.values[j].is_finite() {
                        lip = lip.max((self.values[j] - self.values[i]).abs() / spec.h);
                    }
                }
            }
        }
        lip
    }
}
