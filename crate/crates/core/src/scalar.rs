//! Max-plus scalars.
//!
//! The semifield ℝ_max,+ = (ℝ ∪ {−∞}, max, +):
//! - ⊕ is `max`, with neutral element 𝟘 = −∞
//! - ⊗ is `+`, with unit 𝟙 = 0
//! - every nonzero element `a` has an inverse `a⁻¹ = −a`
//! - real powers are real products, `a^r = r·a`
//!
//! 𝟘 is a separate variant rather than `f64::NEG_INFINITY`, so that no
//! arithmetic path can ever produce `−∞ + ∞`. Conversion to and from IEEE
//! infinities happens only in [`MaxPlusScalar::from_f64`] and
//! [`MaxPlusScalar::to_f64`].
//!
//! The max-algebra ℝ_max = (ℝ₊, max, ×) is reached through
//! [`maxtimes_to_maxplus`] / [`maxplus_to_maxtimes`] (natural log / exp).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Result, TropError};

/// An element of ℝ_max,+.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum MaxPlusScalar {
    /// The tropical zero 𝟘 (−∞).
    #[default]
    Zero,
    /// A finite real value. `Finite(0.0)` is the tropical unit 𝟙.
    Finite(f64),
}

pub use MaxPlusScalar::{Finite, Zero};

/// The tropical unit 𝟙.
pub const ONE: MaxPlusScalar = Finite(0.0);

impl MaxPlusScalar {
    /// Converts an IEEE value: `−∞` becomes 𝟘, NaN and `+∞` are rejected.
    pub fn from_f64(v: f64) -> Result<Self> {
        if v == f64::NEG_INFINITY {
            Ok(Zero)
        } else if v.is_finite() {
            Ok(Finite(v))
        } else {
            Err(TropError::Domain(format!(
                "{v} is not an element of the max-plus semifield"
            )))
        }
    }

    /// Numeric value, with 𝟘 mapped to `−∞`.
    pub fn to_f64(self) -> f64 {
        match self {
            Zero => f64::NEG_INFINITY,
            Finite(v) => v,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Zero)
    }

    /// The finite value, or `None` for 𝟘.
    pub fn finite(self) -> Option<f64> {
        match self {
            Zero => None,
            Finite(v) => Some(v),
        }
    }

    /// `a ⊕ b = max(a, b)`. Selective: the result is always one of the operands.
    pub fn oplus(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Zero, b) => b,
            (a, Zero) => a,
            (Finite(a), Finite(b)) => {
                if a >= b {
                    Finite(a)
                } else {
                    Finite(b)
                }
            }
        }
    }

    /// `a ⊗ b = a + b`, with 𝟘 absorbing.
    pub fn otimes(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Zero,
        }
    }

    /// Multiplicative inverse `a⁻¹ = −a`; undefined at 𝟘.
    pub fn inv(self) -> Result<Self> {
        match self {
            Zero => Err(TropError::Domain("inverse of the tropical zero".into())),
            Finite(v) => Ok(Finite(-v)),
        }
    }

    /// Real power `a^r = r·a`.
    ///
    /// `𝟘^r` is 𝟘 for `r > 0` and undefined for `r ≤ 0`, except that `a^0 = 𝟙`
    /// holds for every nonzero `a`.
    pub fn tpow(self, r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(TropError::Domain(format!("non-finite exponent {r}")));
        }
        match self {
            Zero if r > 0.0 => Ok(Zero),
            Zero => Err(TropError::Domain(format!(
                "tropical zero raised to non-positive power {r}"
            ))),
            Finite(_) if r == 0.0 => Ok(ONE),
            Finite(v) => Ok(Finite(r * v)),
        }
    }

    /// Tropical square root, i.e. numeric halving.
    pub fn sqrt(self) -> Self {
        match self {
            Zero => Zero,
            Finite(v) => Finite(0.5 * v),
        }
    }

    /// Dual minimum `(a⁻¹ ⊕ b⁻¹)⁻¹` when both are nonzero, 𝟘 otherwise.
    pub fn tmin(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(-((-a).max(-b))),
            _ => Zero,
        }
    }

    /// Total order with 𝟘 below every finite value. NaN cannot be constructed
    /// through [`from_f64`](Self::from_f64); a raw `Finite(NaN)` sorts by
    /// [`f64::total_cmp`].
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, Finite(_)) => Ordering::Less,
            (Finite(_), Zero) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.total_cmp(b),
        }
    }

    /// Equality within an absolute tolerance; 𝟘 only equals 𝟘.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        match (self, other) {
            (Zero, Zero) => true,
            (Finite(a), Finite(b)) => (a - b).abs() <= tol,
            _ => false,
        }
    }
}

impl PartialOrd for MaxPlusScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b),
            _ => Some(self.total_cmp(other)),
        }
    }
}

impl From<f64> for MaxPlusScalar {
    /// Wraps a finite value; `−∞` maps to 𝟘.
    fn from(v: f64) -> Self {
        if v == f64::NEG_INFINITY {
            Zero
        } else {
            Finite(v)
        }
    }
}

/// `+` is ⊕.
impl Add for MaxPlusScalar {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.oplus(rhs)
    }
}

/// `*` is ⊗.
impl Mul for MaxPlusScalar {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.otimes(rhs)
    }
}

impl fmt::Display for MaxPlusScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Zero => write!(f, "𝟘"),
            Finite(v) => write!(f, "{v}"),
        }
    }
}

/// Maps a max-algebra value `v ≥ 0` to max-plus by the natural logarithm.
pub fn maxtimes_to_maxplus(v: f64) -> Result<MaxPlusScalar> {
    if v.is_nan() || v < 0.0 || v.is_infinite() {
        return Err(TropError::Domain(format!(
            "{v} is not a nonnegative finite max-times value"
        )));
    }
    if v == 0.0 {
        Ok(Zero)
    } else {
        Ok(Finite(v.ln()))
    }
}

/// Inverse of [`maxtimes_to_maxplus`]: 𝟘 maps to 0.
pub fn maxplus_to_maxtimes(a: MaxPlusScalar) -> f64 {
    match a {
        Zero => 0.0,
        Finite(v) => v.exp(),
    }
}
