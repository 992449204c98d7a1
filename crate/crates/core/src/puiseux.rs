//! Max-plus Puiseux polynomials `P(x) = ⊕_j θ_j x^{p_j} = max_j (p_j·x + θ_j)`
//! with real exponents, their ratios, and closed-form minimization.

use std::fmt;

use crate::error::{Result, TropError};
use crate::linalg::TropMatrix;
use crate::scalar::{Finite, MaxPlusScalar, Zero};

/// Exponents closer than this are the same exponent; exponents this close to
/// zero count as zero when classifying signs.
pub const EXPONENT_TOL: f64 = 1e-12;

/// One term `θ x^p`, stored in max-plus form as the line `p·x + θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub exponent: f64,
    pub coeff: f64,
}

/// A tropical polynomial with finite coefficients.
///
/// Always canonical: monomials sorted by exponent, and exponents equal within
/// [`EXPONENT_TOL`] merged by ⊕ (max) of their coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxPoly {
    monomials: Vec<Monomial>,
}

impl PuiseuxPoly {
    /// Builds a polynomial from `(exponent, coefficient)` pairs.
    pub fn new(terms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let monomials: Vec<Monomial> = terms
            .into_iter()
            .map(|(exponent, coeff)| Monomial { exponent, coeff })
            .collect();
        if monomials.is_empty() {
            return Err(TropError::InvalidArgument(
                "polynomial needs at least one monomial".into(),
            ));
        }
        if let Some(m) = monomials
            .iter()
            .find(|m| !m.exponent.is_finite() || !m.coeff.is_finite())
        {
            return Err(TropError::InvalidArgument(format!(
                "monomial ({}, {}) must have a finite exponent and a nonzero coefficient",
                m.exponent, m.coeff
            )));
        }
        Ok(Self::canonical(monomials))
    }

    /// From parallel exponent and coefficient slices.
    pub fn from_parts(exponents: &[f64], coeffs: &[f64]) -> Result<Self> {
        if exponents.len() != coeffs.len() {
            return Err(TropError::Shape {
                expected: format!("{} coefficients", exponents.len()),
                actual: format!("{} coefficients", coeffs.len()),
            });
        }
        Self::new(exponents.iter().copied().zip(coeffs.iter().copied()))
    }

    pub(crate) fn canonical(mut monomials: Vec<Monomial>) -> Self {
        monomials.sort_by(|a, b| {
            a.exponent
                .total_cmp(&b.exponent)
                .then(b.coeff.total_cmp(&a.coeff))
        });
        let mut out: Vec<Monomial> = Vec::with_capacity(monomials.len());
        for m in monomials {
            match out.last_mut() {
                Some(last) if (m.exponent - last.exponent).abs() <= EXPONENT_TOL => {
                    last.coeff = last.coeff.max(m.coeff);
                }
                _ => out.push(m),
            }
        }
        Self { monomials: out }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// `max_j (p_j·x + θ_j)`.
    pub fn eval(&self, x: f64) -> f64 {
        self.monomials
            .iter()
            .map(|m| m.exponent * x + m.coeff)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Evaluation over the semifield; undefined at 𝟘.
    pub fn eval_scalar(&self, x: MaxPlusScalar) -> Result<MaxPlusScalar> {
        match x {
            Zero => Err(TropError::Domain(
                "polynomial evaluated at the tropical zero".into(),
            )),
            Finite(v) => Ok(Finite(self.eval(v))),
        }
    }

    /// Reads the coefficients as logarithms of max-algebra coefficients and
    /// evaluates `max_j e^{θ_j} v^{p_j}` at `v > 0`.
    pub fn eval_maxtimes(&self, v: f64) -> Result<f64> {
        if !(v.is_finite() && v > 0.0) {
            return Err(TropError::Domain(format!(
                "max-times polynomial evaluated at {v}"
            )));
        }
        Ok(self.eval(v.ln()).exp())
    }

    /// `P ⊕ Q`: the union of monomials, coefficients maxed per exponent.
    pub fn oplus(&self, other: &PuiseuxPoly) -> PuiseuxPoly {
        let mut all = Vec::with_capacity(self.len() + other.len());
        all.extend_from_slice(&self.monomials);
        all.extend_from_slice(&other.monomials);
        Self::canonical(all)
    }

    /// Minimum over `x > 𝟘` by the closed form for polynomials whose
    /// exponents take both signs (or include zero).
    ///
    /// `μ` is the largest value among the pairwise intersections of a
    /// decreasing line with an increasing one, and the constant terms. The
    /// minimizing set is `[max_{p<0} (μ−θ)/p, min_{p>0} (μ−θ)/p]`. Returns
    /// `None` when every exponent is strictly of one sign, as the infimum is
    /// then not attained. Cost `O(N²)`.
    pub fn minimum(&self) -> Option<PolyMinimum> {
        let (mut neg, mut pos, mut mu) = (Vec::new(), Vec::new(), f64::NEG_INFINITY);
        for m in &self.monomials {
            if m.exponent < -EXPONENT_TOL {
                neg.push(*m);
            } else if m.exponent > EXPONENT_TOL {
                pos.push(*m);
            } else {
                mu = mu.max(m.coeff);
            }
        }
        let has_zero = mu > f64::NEG_INFINITY;
        if !has_zero && (neg.is_empty() || pos.is_empty()) {
            return None;
        }
        for j in &neg {
            for k in &pos {
                let v = (j.exponent * k.coeff - k.exponent * j.coeff) / (j.exponent - k.exponent);
                mu = mu.max(v);
            }
        }
        let lo = neg
            .iter()
            .map(|m| (mu - m.coeff) / m.exponent)
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))));
        let hi = pos
            .iter()
            .map(|m| (mu - m.coeff) / m.exponent)
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v))));
        let (mut lo, mut hi) = (
            lo.map_or(Bound::Unbounded, Bound::At),
            hi.map_or(Bound::Unbounded, Bound::At),
        );
        // rounding can leave a degenerate interval inverted by an ulp or two
        if let (Bound::At(l), Bound::At(h)) = (lo, hi) {
            if l > h {
                let mid = 0.5 * (l + h);
                lo = Bound::At(mid);
                hi = Bound::At(mid);
            }
        }
        Some(PolyMinimum { mu, lo, hi })
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|m| format!("{}x{:+}", m.exponent, m.coeff))
            .collect();
        write!(f, "max({})", terms.join(", "))
    }
}

/// One end of a minimizing interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Unbounded,
    At(f64),
}

impl Bound {
    pub fn value(self) -> Option<f64> {
        match self {
            Bound::Unbounded => None,
            Bound::At(v) => Some(v),
        }
    }
}

/// The minimum value of a polynomial and the interval on which it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyMinimum {
    pub mu: f64,
    /// Lower end; `Unbounded` means the interval extends to 𝟘.
    pub lo: Bound,
    /// Upper end; `Unbounded` means the interval extends to +∞.
    pub hi: Bound,
}

impl PolyMinimum {
    /// A single point of the minimizing interval: the midpoint when both ends
    /// are finite, the finite end when only one is, and 0 otherwise.
    pub fn representative(&self) -> f64 {
        match (self.lo, self.hi) {
            (Bound::At(l), Bound::At(h)) => 0.5 * (l + h),
            (Bound::At(l), Bound::Unbounded) => l,
            (Bound::Unbounded, Bound::At(h)) => h,
            (Bound::Unbounded, Bound::Unbounded) => 0.0,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo.value().is_none_or(|l| x >= l) && self.hi.value().is_none_or(|h| x <= h)
    }
}

/// A tropical rational function `P(x) / Q(x) = P(x) − Q(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxRational {
    pub numerator: PuiseuxPoly,
    pub denominator: PuiseuxPoly,
}

impl PuiseuxRational {
    pub fn new(numerator: PuiseuxPoly, denominator: PuiseuxPoly) -> Self {
        Self {
            numerator,
            denominator,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.numerator.eval(x) - self.denominator.eval(x)
    }

    pub fn eval_scalar(&self, x: MaxPlusScalar) -> Result<MaxPlusScalar> {
        let p = self.numerator.eval_scalar(x)?;
        let q = self.denominator.eval_scalar(x)?;
        Ok(p.otimes(q.inv()?))
    }

    /// Max-algebra reading, see [`PuiseuxPoly::eval_maxtimes`].
    pub fn eval_maxtimes(&self, v: f64) -> Result<f64> {
        Ok(self.numerator.eval_maxtimes(v)? / self.denominator.eval_maxtimes(v)?)
    }
}

/// The matrix `X(p)` with entries `x_i^{p_j} = p_j·x_i`.
pub fn vandermonde(xs: &[MaxPlusScalar], exponents: &[f64]) -> Result<TropMatrix> {
    let mut data = Vec::with_capacity(xs.len() * exponents.len());
    for &x in xs {
        let x = x
            .finite()
            .ok_or_else(|| TropError::Domain("sample point at the tropical zero".into()))?;
        data.extend(exponents.iter().map(|&p| Finite(p * x)));
    }
    TropMatrix::new(xs.len(), exponents.len(), data)
}

/// [`vandermonde`] over finite sample points.
pub fn vandermonde_finite(xs: &[f64], exponents: &[f64]) -> TropMatrix {
    let data = xs
        .iter()
        .flat_map(|&x| exponents.iter().map(move |&p| Finite(p * x)))
        .collect();
    TropMatrix::new(xs.len(), exponents.len(), data).expect("dimensions agree by construction")
}
