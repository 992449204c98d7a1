//! Polynomial and rational fitting.
//!
//! [`fit_polynomial`] finds exponents with [`agglomerate`] and coefficients
//! with [`best_approx_solve`]. [`fit_rational`] alternates polynomial fits of
//! the numerator and the denominator:
//!
//! - odd steps fit `X(p) θ ≈ b_k` with `b_k = Y Z(q) σ` (the samples times the
//!   current denominator), starting from the constant denominator `𝟙`;
//! - even steps fit `Z(q) σ ≈ a_k` with `a_k = Y⁻¹ X(p) θ`.
//!
//! `Δ_k` is the squared error of the pair (latest numerator, latest
//! denominator) after step `k`.

use std::fmt;

use crate::error::{Result, TropError};
use crate::exponents::{agglomerate, build_phi, score_partition, Cluster, ExponentResult, Partition};
use crate::linalg::{best_approx_solve, TropVector};
use crate::puiseux::{vandermonde_finite, PuiseuxPoly, PuiseuxRational};
use crate::sample::SampleSet;

/// Result of fitting one polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    /// Exponents as produced by the search, duplicates included.
    pub exponents: Vec<f64>,
    /// Coefficients matching `exponents` one to one.
    pub coefficients: Vec<f64>,
    /// Canonical polynomial built from `exponents` and `coefficients`.
    pub poly: PuiseuxPoly,
    /// Squared error `Δ` of the fit: `d(X(p) θ, target) = Δ / 2`.
    pub delta_star: f64,
    pub exponent_result: ExponentResult,
}

impl PolyFit {
    /// Chebyshev (max absolute) error of the fit, `Δ / 2`.
    pub fn chebyshev_error(&self) -> f64 {
        0.5 * self.delta_star
    }
}

/// Fits an `n`-monomial polynomial to the samples.
pub fn fit_polynomial(samples: &SampleSet, n: usize) -> Result<PolyFit> {
    fit_polynomial_to(samples.xs(), samples.ys(), n)
}

/// Fits an `n`-monomial polynomial on abscissae `xs` to an arbitrary finite
/// target vector.
pub fn fit_polynomial_to(xs: &[f64], target: &[f64], n: usize) -> Result<PolyFit> {
    let phi = build_phi(xs, target)?;
    let exponent_result = agglomerate(&phi, n)?;
    finish_poly_fit(xs, target, exponent_result)
}

/// Coefficients for fixed exponents by the one-sided best approximation. The
/// reported error is the one actually attained at these exponents, which can
/// be below the partition bound `exponent_result.delta_star`.
fn finish_poly_fit(xs: &[f64], target: &[f64], exponent_result: ExponentResult) -> Result<PolyFit> {
    let x = vandermonde_finite(xs, &exponent_result.exponents);
    let sol = best_approx_solve(&x, &TropVector::from_finite(target))?;
    let coefficients = sol
        .solution
        .to_finite()
        .expect("regular system has a finite solution");
    let delta_star = sol
        .delta
        .finite()
        .expect("regular system has a finite error")
        .max(0.0);
    let poly = PuiseuxPoly::from_parts(&exponent_result.exponents, &coefficients)?;
    Ok(PolyFit {
        exponents: exponent_result.exponents.clone(),
        coefficients,
        poly,
        delta_star,
        exponent_result,
    })
}

/// Largest problem [`brute_force_poly_fit`] accepts.
pub const BRUTE_FORCE_MAX_SAMPLES: usize = 8;
pub const BRUTE_FORCE_MAX_MONOMIALS: usize = 3;

/// Exhaustive counterpart of [`fit_polynomial`]: scores every partition of
/// the samples into exactly `n` groups and keeps the best. Intended as a test
/// oracle for small problems.
pub fn brute_force_poly_fit(samples: &SampleSet, n: usize) -> Result<PolyFit> {
    let m = samples.len();
    if m > BRUTE_FORCE_MAX_SAMPLES || n > BRUTE_FORCE_MAX_MONOMIALS {
        return Err(TropError::InvalidArgument(format!(
            "exhaustive search is limited to {BRUTE_FORCE_MAX_SAMPLES} samples and \
             {BRUTE_FORCE_MAX_MONOMIALS} monomials, got {m} and {n}"
        )));
    }
    if n == 0 || n > m {
        return Err(TropError::InvalidArgument(format!(
            "number of monomials {n} must be between 1 and the sample count {m}"
        )));
    }
    let phi = build_phi(samples.xs(), samples.ys())?;
    let mut best: Option<(f64, Vec<Vec<usize>>, Vec<f64>)> = None;
    for groups in set_partitions(m, n) {
        let (score, exponents) = score_partition(&groups, &phi)?;
        if best.as_ref().is_none_or(|b| score < b.0) {
            best = Some((score, groups, exponents));
        }
    }
    let (delta_star, groups, exponents) = best.expect("at least one partition");
    let subsets = groups
        .iter()
        .map(|g| Cluster::from_members(g, &phi))
        .collect::<Result<Vec<_>>>()?;
    let subset_minima = subsets.iter().map(|c| c.minimum.mu).collect();
    let result = ExponentResult {
        exponents,
        subset_minima,
        delta_star,
        partition: Partition { subsets },
        merges: Vec::new(),
    };
    finish_poly_fit(samples.xs(), samples.ys(), result)
}

/// All partitions of `0..m` into exactly `k` nonempty groups, by restricted
/// growth strings.
fn set_partitions(m: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        i: usize,
        m: usize,
        k: usize,
        used: usize,
        labels: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if m - i < k - used {
            return;
        }
        if i == m {
            let mut groups = vec![Vec::new(); k];
            for (idx, &g) in labels.iter().enumerate() {
                groups[g].push(idx);
            }
            out.push(groups);
            return;
        }
        for g in 0..=used.min(k - 1) {
            labels.push(g);
            rec(i + 1, m, k, used.max(g + 1), labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, 0, &mut Vec::with_capacity(m), &mut out);
    out
}

/// When [`fit_rational`] stops and which iterate it returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StopRule {
    /// Run until `Δ_k ≤ ε`, a repeated state, or the iteration cap, and
    /// return the iterate with the least `Δ_k` seen.
    #[default]
    BestIterate,
    /// After every step `k ≥ 2`: if `Δ_k > Δ_{k−1}` return iterate `k−1`;
    /// otherwise if `Δ_k > Δ_{k−1} − ε` return iterate `k`.
    FirstNonImprovement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    ErrorIncreased,
    ConvergedWithinEpsilon,
    /// The target vector of a step repeated an earlier one of the same side,
    /// up to an added `c·x + d`, so the iteration would cycle from there on.
    CycleDetected,
    IterationCap,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::ErrorIncreased => "error-increased",
            StopReason::ConvergedWithinEpsilon => "converged-within-epsilon",
            StopReason::CycleDetected => "cycle-detected",
            StopReason::IterationCap => "iteration-cap",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    /// Numerator monomials.
    pub n: usize,
    /// Denominator monomials.
    pub l: usize,
    /// Squared-error tolerance.
    pub epsilon: f64,
    /// Maximum number of numerator/denominator alternations.
    pub iteration_cap: usize,
    pub stop_rule: StopRule,
}

impl FitConfig {
    pub const DEFAULT_EPSILON: f64 = 1e-4;
    pub const DEFAULT_ITERATION_CAP: usize = 200;

    pub fn new(n: usize, l: usize) -> Self {
        Self {
            n,
            l,
            epsilon: Self::DEFAULT_EPSILON,
            iteration_cap: Self::DEFAULT_ITERATION_CAP,
            stop_rule: StopRule::default(),
        }
    }

    fn validate(&self, m: usize) -> Result<()> {
        for (name, v) in [("N", self.n), ("L", self.l)] {
            if v == 0 || v > m {
                return Err(TropError::InvalidArgument(format!(
                    "{name} = {v} must be between 1 and the sample count {m}"
                )));
            }
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(TropError::InvalidArgument(format!(
                "epsilon = {} must be positive",
                self.epsilon
            )));
        }
        if self.iteration_cap == 0 {
            return Err(TropError::InvalidArgument(
                "iteration cap must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// `Δ_k` after step `k` (1-based; odd steps refit the numerator).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub k: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalFit {
    pub rational: PuiseuxRational,
    pub numerator_exponents: Vec<f64>,
    pub numerator_coefficients: Vec<f64>,
    pub denominator_exponents: Vec<f64>,
    pub denominator_coefficients: Vec<f64>,
    /// Squared error of the returned function on the samples.
    pub delta_star: f64,
    /// Step whose iterate is returned.
    pub selected_step: usize,
    pub trace: Vec<TraceEntry>,
    pub stop_reason: StopReason,
}

impl RationalFit {
    pub fn chebyshev_error(&self) -> f64 {
        0.5 * self.delta_star
    }
}

#[derive(Debug, Clone)]
struct Side {
    exponents: Vec<f64>,
    coefficients: Vec<f64>,
}

impl Side {
    fn eval(&self, x: f64) -> f64 {
        self.exponents
            .iter()
            .zip(&self.coefficients)
            .map(|(p, c)| p * x + c)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone)]
struct Iterate {
    step: usize,
    delta: f64,
    numerator: Side,
    denominator: Side,
}

const CYCLE_TOL: f64 = 1e-9;

/// True when `target` equals an earlier target up to an added `c·x + d`.
///
/// Shifting a target by `c·x + d` shifts the fitted exponents by `c` and the
/// coefficients by `d`, and a common monomial factor cancels in `P/Q`, so the
/// error sequence repeats from there on.
fn repeats(xs: &[f64], history: &[Vec<f64>], target: &[f64]) -> bool {
    let (lo, hi) = xs.iter().enumerate().fold((0, 0), |(lo, hi), (i, &x)| {
        (if x < xs[lo] { i } else { lo }, if x > xs[hi] { i } else { hi })
    });
    history.iter().any(|h| {
        let diff: Vec<f64> = target.iter().zip(h).map(|(t, h)| t - h).collect();
        let slope = if xs[hi] > xs[lo] {
            (diff[hi] - diff[lo]) / (xs[hi] - xs[lo])
        } else {
            0.0
        };
        let offset = diff[lo] - slope * xs[lo];
        diff.iter()
            .zip(xs)
            .all(|(d, x)| (d - slope * x - offset).abs() <= CYCLE_TOL)
    })
}

/// Fits `P(x) / Q(x)` with `N` and `L` monomials by alternating polynomial fits.
pub fn fit_rational(samples: &SampleSet, config: FitConfig) -> Result<RationalFit> {
    config.validate(samples.len())?;
    let xs = samples.xs();
    let ys = samples.ys();

    let mut denominator = Side {
        exponents: vec![0.0; config.l],
        coefficients: vec![0.0; config.l],
    };
    let mut numerator: Option<Side> = None;
    let mut trace = Vec::new();
    let mut previous: Option<Iterate> = None;
    let mut best: Option<Iterate> = None;
    let mut seen_b: Vec<Vec<f64>> = Vec::new();
    let mut seen_a: Vec<Vec<f64>> = Vec::new();

    for k in 1..=2 * config.iteration_cap {
        let odd = k % 2 == 1;
        let target: Vec<f64> = if odd {
            xs.iter()
                .zip(ys)
                .map(|(&x, &y)| y + denominator.eval(x))
                .collect()
        } else {
            let num = numerator.as_ref().expect("numerator fitted on the previous step");
            xs.iter().zip(ys).map(|(&x, &y)| num.eval(x) - y).collect()
        };
        let cycled = if odd {
            repeats(xs, &seen_b, &target)
        } else {
            repeats(xs, &seen_a, &target)
        };

        let fit = fit_polynomial_to(xs, &target, if odd { config.n } else { config.l })?;
        let side = Side {
            exponents: fit.exponents,
            coefficients: fit.coefficients,
        };
        if odd {
            numerator = Some(side);
            seen_b.push(target);
        } else {
            denominator = side;
            seen_a.push(target);
        }
        let current = Iterate {
            step: k,
            delta: fit.delta_star,
            numerator: numerator.clone().expect("set on the first step"),
            denominator: denominator.clone(),
        };
        trace.push(TraceEntry {
            k,
            delta: current.delta,
        });
        if best.as_ref().is_none_or(|b| current.delta < b.delta) {
            best = Some(current.clone());
        }

        let stop = match config.stop_rule {
            StopRule::BestIterate => {
                let best_now = best.clone().expect("set above");
                if current.delta <= config.epsilon {
                    Some((best_now, StopReason::ConvergedWithinEpsilon))
                } else if cycled {
                    Some((best_now, StopReason::CycleDetected))
                } else {
                    None
                }
            }
            StopRule::FirstNonImprovement => {
                if current.delta <= config.epsilon {
                    Some((current.clone(), StopReason::ConvergedWithinEpsilon))
                } else if let Some(prev) = previous.as_ref() {
                    if current.delta > prev.delta {
                        Some((prev.clone(), StopReason::ErrorIncreased))
                    } else if current.delta > prev.delta - config.epsilon {
                        Some((current.clone(), StopReason::ConvergedWithinEpsilon))
                    } else {
                        None
                    }
                } else {
                    None
                }
            }
        };
        if let Some((chosen, reason)) = stop {
            return assemble(chosen, trace, reason);
        }
        previous = Some(current);
    }

    let chosen = match config.stop_rule {
        StopRule::BestIterate => best,
        StopRule::FirstNonImprovement => previous,
    }
    .expect("at least one step ran");
    assemble(chosen, trace, StopReason::IterationCap)
}

fn assemble(it: Iterate, trace: Vec<TraceEntry>, stop_reason: StopReason) -> Result<RationalFit> {
    let rational = PuiseuxRational::new(
        PuiseuxPoly::from_parts(&it.numerator.exponents, &it.numerator.coefficients)?,
        PuiseuxPoly::from_parts(&it.denominator.exponents, &it.denominator.coefficients)?,
    );
    Ok(RationalFit {
        rational,
        numerator_exponents: it.numerator.exponents,
        numerator_coefficients: it.numerator.coefficients,
        denominator_exponents: it.denominator.exponents,
        denominator_coefficients: it.denominator.coefficients,
        delta_star: it.delta,
        selected_step: it.step,
        trace,
        stop_reason,
    })
}
