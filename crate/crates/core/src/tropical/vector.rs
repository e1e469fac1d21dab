use super::scalar::{approx_eq, approx_le, gap, Trop};

/// A max-plus vector aligned to the label order of some matrix.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TropicalVector(pub Vec<Trop>);

impl TropicalVector {
    pub fn zero(n: usize) -> Self {
        TropicalVector(vec![Trop::ZERO; n])
    }

    pub fn constant(n: usize, c: f64) -> Self {
        TropicalVector(vec![Trop(c); n])
    }

    pub fn from_values<I: IntoIterator<Item = f64>>(values: I) -> Self {
        TropicalVector(values.into_iter().map(Trop).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Trop {
        self.0[i]
    }

    pub fn values(&self) -> Vec<f64> {
        self.0.iter().map(|t| t.0).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Trop> + '_ {
        self.0.iter().copied()
    }

    /// True when every entry is 𝟘.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|t| t.is_zero())
    }

    pub fn has_top(&self) -> bool {
        self.0.iter().any(|t| t.is_top())
    }

    /// Entrywise ⊕.
    pub fn oplus(&self, other: &TropicalVector) -> TropicalVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        TropicalVector(self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect())
    }

    /// Scalar action `α ⊙ v`.
    pub fn scale(&self, alpha: Trop) -> TropicalVector {
        TropicalVector(self.0.iter().map(|v| alpha * *v).collect())
    }

    /// Row-times-column pairing `self ⊙ other = ⊕_i self_i ⊙ other_i`.
    pub fn dot(&self, other: &TropicalVector) -> Trop {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Trop::ZERO, |acc, (a, b)| acc + *a * *b)
    }

    pub fn approx_eq(&self, other: &TropicalVector, tol: f64) -> bool {
        self.len() == other.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| approx_eq(a.0, b.0, tol))
    }

    /// Pointwise `self ≤ other` up to `tol`.
    pub fn approx_le(&self, other: &TropicalVector, tol: f64) -> bool {
        self.len() == other.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| approx_le(a.0, b.0, tol))
    }

    /// Largest entrywise gap; +∞ if infinities disagree.
    pub fn max_gap(&self, other: &TropicalVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| gap(a.0, b.0))
            .fold(0.0, f64::max)
    }
}

impl From<Vec<f64>> for TropicalVector {
    fn from(v: Vec<f64>) -> Self {
        TropicalVector::from_values(v)
    }
}

impl FromIterator<Trop> for TropicalVector {
    fn from_iter<I: IntoIterator<Item = Trop>>(iter: I) -> Self {
        TropicalVector(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_and_scale() {
        let a = TropicalVector::from(vec![0.0, -1.0, f64::NEG_INFINITY]);
        let b = TropicalVector::from(vec![-2.0, 3.0, 10.0]);
        assert_eq!(a.dot(&b), Trop(2.0));
        assert_eq!(a.scale(Trop(1.0)).values()[..2], [1.0, 0.0]);
        assert!(TropicalVector::zero(3).is_zero());
    }

    #[test]
    fn gaps_respect_infinities() {
        let a = TropicalVector::from(vec![f64::NEG_INFINITY, 1.0]);
        let b = TropicalVector::from(vec![f64::NEG_INFINITY, 1.5]);
        assert_eq!(a.max_gap(&b), 0.5);
        let c = TropicalVector::from(vec![0.0, 1.0]);
        assert!(a.max_gap(&c).is_infinite());
        assert!(a.approx_le(&c, 0.0));
    }
}
