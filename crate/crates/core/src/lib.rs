//! Tropical (max-plus) Chebyshev approximation of sampled data by Puiseux
//! polynomials and rational functions.
//!
//! Layers, bottom up:
//! - [`scalar`]: the max-plus semifield and its log/exp link to max-times;
//! - [`linalg`]: vectors, matrices, the tropical distance, and best
//!   approximate solutions of `Ax = b` and `Ax = By`;
//! - [`puiseux`]: polynomial and rational function evaluation, `X(p)`
//!   matrices, closed-form polynomial minimization;
//! - [`exponents`]: agglomerative exponent search;
//! - [`fitting`]: polynomial and rational fitting.

pub mod error;
pub mod exponents;
pub mod fitting;
pub mod linalg;
pub mod puiseux;
pub mod sample;
pub mod scalar;

pub use error::{Result, TropError};
pub use exponents::{agglomerate, build_phi, merged_min, ExponentResult, Partition, PhiFamily};
pub use fitting::{
    brute_force_poly_fit, fit_polynomial, fit_polynomial_to, fit_rational, FitConfig, PolyFit, RationalFit,
    StopReason, StopRule, TraceEntry,
};
pub use linalg::{
    alternating_solve, best_approx_solve, distance, ApproxSolution, Distance, TropMatrix, TropVector,
};
pub use puiseux::{vandermonde, PolyMinimum, PuiseuxPoly, PuiseuxRational};
pub use sample::{reference_samples, SampleSet};
pub use scalar::MaxPlusScalar;
