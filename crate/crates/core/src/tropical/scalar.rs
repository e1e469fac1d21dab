//! Max-plus scalars over ℝ ∪ {−∞}, completed with +∞ for closure results.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

/// Absolute tolerance used for float-mode comparisons.
pub const FLOAT_TOL: f64 = 1e-9;

/// An element of the completed max-plus semiring.
///
/// `Add` is ⊕ (max) and `Mul` is ⊙ (ordinary addition, with −∞ absorbing
/// even against +∞).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct Trop(pub f64);

impl Trop {
    /// 𝟘 = −∞.
    pub const ZERO: Trop = Trop(f64::NEG_INFINITY);
    /// 𝟙 = 0.
    pub const ONE: Trop = Trop(0.0);
    /// +∞, only produced by closures.
    pub const TOP: Trop = Trop(f64::INFINITY);

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    #[inline]
    pub fn is_top(self) -> bool {
        self.0 == f64::INFINITY
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    #[inline]
    pub fn oplus(self, other: Trop) -> Trop {
        oplus(self, other)
    }

    #[inline]
    pub fn otimes(self, other: Trop) -> Trop {
        otimes(self, other)
    }

    /// Multiplicative inverse, defined exactly on finite values.
    pub fn inverse(self) -> Option<Trop> {
        self.is_finite().then(|| Trop(-self.0))
    }

    /// Kleene star of a scalar: 𝟙 when `a ≤ 𝟙`, +∞ otherwise.
    pub fn star(self) -> Trop {
        if self.0 > 0.0 {
            Trop::TOP
        } else {
            Trop::ONE
        }
    }

    /// Equality with an absolute tolerance; infinities compare exactly.
    pub fn approx_eq(self, other: Trop, tol: f64) -> bool {
        approx_eq(self.0, other.0, tol)
    }

    pub fn total_cmp(&self, other: &Trop) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[inline]
pub fn oplus(a: Trop, b: Trop) -> Trop {
    if a.0 >= b.0 {
        a
    } else {
        b
    }
}

#[inline]
pub fn otimes(a: Trop, b: Trop) -> Trop {
    if a.is_zero() || b.is_zero() {
        Trop::ZERO
    } else {
        // finite + ±∞ and (+∞) + (+∞) both stay +∞ here
        Trop(a.0 + b.0)
    }
}

/// `a == b` up to `tol`, treating equal infinities as equal.
#[inline]
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        a == b
    } else {
        (a - b).abs() <= tol
    }
}

/// `a ≤ b + tol` in the extended order.
#[inline]
pub fn approx_le(a: f64, b: f64, tol: f64) -> bool {
    if a == f64::NEG_INFINITY || b == f64::INFINITY {
        true
    } else if a.is_infinite() || b.is_infinite() {
        false
    } else {
        a <= b + tol
    }
}

/// Gap |a − b| in the extended reals: 0 for equal infinities, +∞ for mismatched ones.
pub fn gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else if a.is_infinite() || b.is_infinite() {
        f64::INFINITY
    } else {
        (a - b).abs()
    }
}

impl Add for Trop {
    type Output = Trop;
    fn add(self, rhs: Trop) -> Trop {
        oplus(self, rhs)
    }
}

impl Mul for Trop {
    type Output = Trop;
    fn mul(self, rhs: Trop) -> Trop {
        otimes(self, rhs)
    }
}

impl From<f64> for Trop {
    fn from(v: f64) -> Self {
        Trop(v)
    }
}

impl fmt::Display for Trop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "-inf")
        } else if self.is_top() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Numeric comparison regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NumericMode {
    /// Integer weights held exactly in `f64`; comparisons are exact.
    Integer,
    /// General reals; comparisons use [`FLOAT_TOL`].
    #[default]
    Float,
}

impl NumericMode {
    pub fn tol(self) -> f64 {
        match self {
            NumericMode::Integer => 0.0,
            NumericMode::Float => FLOAT_TOL,
        }
    }

    /// Integer mode when every finite value is an integer, float mode otherwise.
    pub fn detect<I: IntoIterator<Item = f64>>(values: I) -> NumericMode {
        for v in values {
            if v.is_finite() && v.fract() != 0.0 {
                return NumericMode::Float;
            }
        }
        NumericMode::Integer
    }
}
