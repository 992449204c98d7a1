//! Dense max-plus vectors and matrices, the tropical distance, and best
//! approximate solvers for one-sided (`Ax = b`) and two-sided (`Ax = By`)
//! vector equations.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::Index;

use crate::error::{Result, TropError};
use crate::scalar::{MaxPlusScalar, Zero, ONE};

/// Tolerance under which a squared error is treated as 𝟙 (an exact solution).
pub const EXACT_TOL: f64 = 1e-9;

/// A column vector over ℝ_max,+.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TropVector(Vec<MaxPlusScalar>);

impl TropVector {
    pub fn new(entries: Vec<MaxPlusScalar>) -> Self {
        Self(entries)
    }

    /// Builds a vector of finite entries.
    pub fn from_finite(values: &[f64]) -> Self {
        Self(values.iter().map(|&v| MaxPlusScalar::from(v)).collect())
    }

    /// The all-𝟙 vector of length `n`.
    pub fn ones(n: usize) -> Self {
        Self(vec![ONE; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[MaxPlusScalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<MaxPlusScalar> {
        self.0
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Nonempty with every entry nonzero.
    pub fn is_regular(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|a| !a.is_zero())
    }

    /// Numeric values, or `None` if any entry is 𝟘.
    pub fn to_finite(&self) -> Option<Vec<f64>> {
        self.0.iter().map(|a| a.finite()).collect()
    }

    /// The multiplicative conjugate transpose `x⁻`: nonzero entries are
    /// inverted, zero entries stay 𝟘. The result is used as a row vector.
    pub fn conjugate(&self) -> TropVector {
        TropVector(self.0.iter().map(|a| a.inv().unwrap_or(Zero)).collect())
    }

    /// Inner product `x⁻y`-style: `⊕_i self_i ⊗ other_i`.
    pub fn dot(&self, other: &TropVector) -> Result<MaxPlusScalar> {
        check_len(self.len(), other.len())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(Zero, |acc, (&a, &b)| acc.oplus(a.otimes(b))))
    }

    /// Scalar multiple `c ⊗ x`.
    pub fn scale(&self, c: MaxPlusScalar) -> TropVector {
        TropVector(self.0.iter().map(|&a| c.otimes(a)).collect())
    }
}

impl Index<usize> for TropVector {
    type Output = MaxPlusScalar;

    fn index(&self, i: usize) -> &MaxPlusScalar {
        &self.0[i]
    }
}

impl From<Vec<MaxPlusScalar>> for TropVector {
    fn from(v: Vec<MaxPlusScalar>) -> Self {
        Self(v)
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(TropError::Shape {
            expected: format!("length {expected}"),
            actual: format!("length {actual}"),
        })
    }
}

/// A dense row-major matrix over ℝ_max,+.
#[derive(Debug, Clone, PartialEq)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MaxPlusScalar>,
}

impl TropMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<MaxPlusScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(TropError::Shape {
                expected: format!("{rows}x{cols} = {} entries", rows * cols),
                actual: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<MaxPlusScalar>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(TropError::Shape {
                expected: format!("rows of length {n}"),
                actual: format!("row of length {}", bad.len()),
            });
        }
        Self::new(m, n, rows.into_iter().flatten().collect())
    }

    /// Matrix of finite entries; `f64::NEG_INFINITY` is accepted as 𝟘.
    pub fn from_finite_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| MaxPlusScalar::from(v)).collect())
                .collect(),
        )
    }

    /// The tropical identity: 𝟙 on the diagonal, 𝟘 elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::diagonal(&TropVector::ones(n))
    }

    /// Diagonal matrix with the given entries, 𝟘 off the diagonal.
    pub fn diagonal(d: &TropVector) -> Self {
        let n = d.len();
        let mut data = vec![Zero; n * n];
        for i in 0..n {
            data[i * n + i] = d[i];
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> MaxPlusScalar {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[MaxPlusScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_row_regular(&self) -> bool {
        self.rows > 0 && (0..self.rows).all(|i| self.row(i).iter().any(|a| !a.is_zero()))
    }

    pub fn is_column_regular(&self) -> bool {
        self.cols > 0 && (0..self.cols).all(|j| (0..self.rows).any(|i| !self.get(i, j).is_zero()))
    }

    pub fn is_regular(&self) -> bool {
        self.is_row_regular() && self.is_column_regular()
    }

    /// `A x` with `(Ax)_i = ⊕_j A_ij ⊗ x_j`.
    pub fn matvec(&self, x: &TropVector) -> Result<TropVector> {
        check_len(self.cols, x.len())?;
        Ok(TropVector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(x.entries())
                        .fold(Zero, |acc, (&a, &b)| acc.oplus(a.otimes(b)))
                })
                .collect(),
        ))
    }

    /// Row vector times matrix, `r A` with `(rA)_j = ⊕_i r_i ⊗ A_ij`.
    pub fn vecmat(&self, r: &TropVector) -> Result<TropVector> {
        check_len(self.rows, r.len())?;
        let mut out = vec![Zero; self.cols];
        for i in 0..self.rows {
            let ri = r[i];
            if ri.is_zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = o.oplus(ri.otimes(a));
            }
        }
        Ok(TropVector(out))
    }

    fn require_regular(&self, what: &str) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(TropError::NotRegular(format!(
                "{what} ({}x{}) has a zero row or column",
                self.rows, self.cols
            )))
        }
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Value of the tropical distance: a scalar, or the undefined value `∞`
/// that sits above every scalar (vectors with different supports).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Finite(MaxPlusScalar),
    Infinite,
}

impl Distance {
    /// Numeric value; `∞` maps to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            Distance::Finite(a) => a.to_f64(),
            Distance::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Distance::Infinite, Distance::Infinite) => Some(Ordering::Equal),
            (Distance::Infinite, _) => Some(Ordering::Greater),
            (_, Distance::Infinite) => Some(Ordering::Less),
            (Distance::Finite(a), Distance::Finite(b)) => a.partial_cmp(b),
        }
    }
}

/// `d(x, y) = y⁻x ⊕ x⁻y` for vectors with equal supports; 𝟙 when both are
/// zero vectors; `∞` when the supports differ. On finite vectors this is the
/// Chebyshev distance `max_i |x_i − y_i|`.
pub fn distance(x: &TropVector, y: &TropVector) -> Result<Distance> {
    check_len(x.len(), y.len())?;
    if x.support() != y.support() {
        return Ok(Distance::Infinite);
    }
    if x.support().is_empty() {
        return Ok(Distance::Finite(ONE));
    }
    let d = y.conjugate().dot(x)?.oplus(x.conjugate().dot(y)?);
    Ok(Distance::Finite(d))
}

/// Best approximate solution of `Ax = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxSolution {
    /// Squared approximation error Δ; the attained distance is `sqrt(Δ)`.
    pub delta: MaxPlusScalar,
    pub solution: TropVector,
    /// `Δ = 𝟙` within [`EXACT_TOL`]; then `solution` is the maximal exact solution.
    pub exact: bool,
}

/// Solves `Ax = b` in the best-approximation sense for regular `A` and `b`.
///
/// With `x̂ = (b⁻A)⁻` the maximal subsolution of `Ax ≤ b`, the squared error
/// is `Δ = (A x̂)⁻ b` and the solution is `sqrt(Δ) ⊗ x̂`, so that
/// `d(A x, b) = sqrt(Δ)`. When `Δ = 𝟙` the unscaled `x̂` is returned, which is
/// then the greatest exact solution. Cost is `O(MN)`.
pub fn best_approx_solve(a: &TropMatrix, b: &TropVector) -> Result<ApproxSolution> {
    a.require_regular("matrix")?;
    check_len(a.rows(), b.len())?;
    if !b.is_regular() {
        return Err(TropError::NotRegular("right-hand side has a zero entry".into()));
    }
    let sub = a.vecmat(&b.conjugate())?.conjugate();
    let delta = a.matvec(&sub)?.conjugate().dot(b)?;
    let exact = delta.finite().is_some_and(|d| d.abs() <= EXACT_TOL);
    let solution = if exact { sub } else { sub.scale(delta.sqrt()) };
    Ok(ApproxSolution {
        delta,
        solution,
        exact,
    })
}

/// Why the alternating two-sided solver stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoSidedOutcome {
    /// `Δ_k = 𝟙`: the returned vectors solve `Ax = By` exactly.
    Exact,
    /// A newly produced vector repeated an earlier one.
    Cycle,
    /// The iteration cap was hit before either of the above.
    IterationCap,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternatingOptions {
    /// Maximum number of half-steps (one-sided solves).
    pub max_iter: usize,
    /// Grid used to quantize vectors before comparing them for cycle detection.
    pub quantum: f64,
}

impl Default for AlternatingOptions {
    fn default() -> Self {
        Self {
            max_iter: 10_000,
            quantum: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoSidedSolution {
    /// Squared error of the returned pair: `d(A x, B y)² = Δ`.
    pub delta: MaxPlusScalar,
    pub x: TropVector,
    pub y: TropVector,
    /// Half-steps performed.
    pub iterations: usize,
    pub outcome: TwoSidedOutcome,
    /// `Δ_k` after every half-step.
    pub trace: Vec<MaxPlusScalar>,
}

/// Cycle key of a vector: entries relative to its first finite entry,
/// quantized. `Ax = By` is homogeneous (`(c⊗x, c⊗y)` has the same residual
/// and leads to the same iterates up to `c`), so vectors equal up to a scalar
/// factor count as a repeat.
fn quantize(v: &TropVector, quantum: f64) -> Vec<i128> {
    let base = v.entries().iter().find_map(|a| a.finite()).unwrap_or(0.0);
    v.entries()
        .iter()
        .map(|a| match a.finite() {
            Some(x) => ((x - base) / quantum).round() as i128,
            None => i128::MIN,
        })
        .collect()
}

/// Alternating best approximation for the two-sided equation `Ax = By`.
///
/// Starting from `x_0`, each half-step holds one side fixed and solves the
/// other with [`best_approx_solve`]: `y_{k+1}` from `B y = A x_k`, then
/// `x_{k+1}` from `A x = B y_k`. Stops when `Δ_k = 𝟙`, when the vector just
/// produced equals (up to a scalar factor, after quantization) one produced
/// earlier on the same side, or after `opts.max_iter` half-steps.
///
/// Any regular `x_0` will do; `TropVector::ones(a.cols())` is the usual start.
pub fn alternating_solve(
    a: &TropMatrix,
    b: &TropMatrix,
    x0: &TropVector,
    opts: AlternatingOptions,
) -> Result<TwoSidedSolution> {
    a.require_regular("left matrix")?;
    b.require_regular("right matrix")?;
    check_len(a.rows(), b.rows())?;
    check_len(a.cols(), x0.len())?;
    if !x0.is_regular() {
        return Err(TropError::NotRegular("initial vector has a zero entry".into()));
    }

    let mut seen_x = HashSet::new();
    let mut seen_y = HashSet::new();
    seen_x.insert(quantize(x0, opts.quantum));
    let mut x = x0.clone();
    let mut trace = Vec::new();
    let mut iterations = 0;

    loop {
        // y-side: B y ≈ A x
        let ax = a.matvec(&x)?;
        let sol = best_approx_solve(b, &ax)?;
        iterations += 1;
        trace.push(sol.delta);
        let y = sol.solution;
        if sol.exact {
            return Ok(finish(sol.delta, x, y, iterations, TwoSidedOutcome::Exact, trace));
        }
        if !seen_y.insert(quantize(&y, opts.quantum)) {
            return Ok(finish(sol.delta, x, y, iterations, TwoSidedOutcome::Cycle, trace));
        }
        if iterations >= opts.max_iter {
            return Ok(finish(
                sol.delta,
                x,
                y,
                iterations,
                TwoSidedOutcome::IterationCap,
                trace,
            ));
        }

        // x-side: A x ≈ B y
        let by = b.matvec(&y)?;
        let sol = best_approx_solve(a, &by)?;
        iterations += 1;
        trace.push(sol.delta);
        x = sol.solution;
        if sol.exact {
            return Ok(finish(sol.delta, x, y, iterations, TwoSidedOutcome::Exact, trace));
        }
        if !seen_x.insert(quantize(&x, opts.quantum)) {
            return Ok(finish(sol.delta, x, y, iterations, TwoSidedOutcome::Cycle, trace));
        }
        if iterations >= opts.max_iter {
            return Ok(finish(
                sol.delta,
                x,
                y,
                iterations,
                TwoSidedOutcome::IterationCap,
                trace,
            ));
        }
    }
}

fn finish(
    delta: MaxPlusScalar,
    x: TropVector,
    y: TropVector,
    iterations: usize,
    outcome: TwoSidedOutcome,
    trace: Vec<MaxPlusScalar>,
) -> TwoSidedSolution {
    TwoSidedSolution {
        delta,
        x,
        y,
        iterations,
        outcome,
        trace,
    }
}
