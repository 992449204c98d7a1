//! Sample data `(x_i, y_i)` and the reference data set.

use crate::error::{Result, TropError};
use crate::scalar::MaxPlusScalar;

/// `M ≥ 1` finite sample points in max-plus coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SampleSet {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(TropError::Shape {
                expected: format!("{} values", xs.len()),
                actual: format!("{} values", ys.len()),
            });
        }
        if xs.is_empty() {
            return Err(TropError::InvalidArgument(
                "at least one sample is required".into(),
            ));
        }
        if let Some(i) = (0..xs.len()).find(|&i| !xs[i].is_finite() || !ys[i].is_finite()) {
            return Err(TropError::InvalidArgument(format!(
                "sample {} = ({}, {}) is not finite",
                i + 1,
                xs[i],
                ys[i]
            )));
        }
        Ok(Self { xs, ys })
    }

    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            points.iter().map(|p| p.0).collect(),
            points.iter().map(|p| p.1).collect(),
        )
    }

    /// Max-algebra samples (`x, y > 0`) mapped to max-plus by the natural log.
    pub fn from_maxtimes(xs: &[f64], ys: &[f64]) -> Result<Self> {
        let log = |v: f64, what: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(v.ln())
            } else {
                Err(TropError::Domain(format!(
                    "{what} = {v} must be positive in max-times mode"
                )))
            }
        };
        let lx = xs.iter().map(|&v| log(v, "x")).collect::<Result<Vec<_>>>()?;
        let ly = ys.iter().map(|&v| log(v, "y")).collect::<Result<Vec<_>>>()?;
        Self::new(lx, ly)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    pub fn x_scalars(&self) -> Vec<MaxPlusScalar> {
        self.xs.iter().map(|&v| MaxPlusScalar::from(v)).collect()
    }
}

/// The nonconvex test function `3(x−1)² sin(x) + 1/4` (radians).
pub fn reference_function(x: f64) -> f64 {
    3.0 * (x - 1.0).powi(2) * x.sin() + 0.25
}

/// The 21-point reference data set: `x_i = (i−1)/10` for `i = 1..21` and
/// `y_i` from [`reference_function`].
pub fn reference_samples() -> SampleSet {
    let xs: Vec<f64> = (0..21).map(|i| i as f64 / 10.0).collect();
    let ys = xs.iter().map(|&x| reference_function(x)).collect();
    SampleSet::new(xs, ys).expect("reference samples are finite")
}
