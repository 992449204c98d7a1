#![allow(dead_code)]

use proptest::prelude::*;
use tropfit::SampleSet;

/// `M` distinct sorted abscissae in `[−3, 3]`, at least `min_gap` apart.
pub fn abscissae(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05..1.0f64, m).prop_map(|gaps| {
        let mut x = -3.0;
        gaps.iter()
            .map(|g| {
                x += g;
                x
            })
            .collect()
    })
}

/// Arbitrary samples, `1 ≤ M ≤ max_m`.
pub fn samples(max_m: usize) -> impl Strategy<Value = SampleSet> {
    (1..=max_m)
        .prop_flat_map(|m| (abscissae(m), prop::collection::vec(-5.0..5.0f64, m)))
        .prop_map(|(xs, ys)| SampleSet::new(xs, ys).unwrap())
}

/// Samples of an `N`-monomial max-plus polynomial whose every monomial is the
/// unique maximum at one or more samples, with `N ≤ max_n` and `M ≤ max_m`.
///
/// Built as a continuous convex piecewise-linear function: the samples are cut
/// into `N` consecutive nonempty blocks, slopes increase block by block, and
/// each breakpoint lies strictly between two blocks.
pub fn convex_samples(max_m: usize, max_n: usize) -> impl Strategy<Value = (SampleSet, usize)> {
    (1..=max_m)
        .prop_flat_map(move |m| (Just(m), 1..=max_n.min(m)))
        .prop_flat_map(|(m, n)| {
            (
                abscissae(m),
                Just(n),
                // block sizes via n−1 distinct cut positions
                prop::sample::subsequence((1..m).collect::<Vec<_>>(), n - 1),
                prop::collection::vec(0.2..2.0f64, n),
                -3.0..3.0f64,
                -5.0..5.0f64,
                prop::collection::vec(0.1..0.9f64, n),
            )
        })
        .prop_map(|(xs, n, cuts, slope_steps, first_slope, first_coeff, where_)| {
            let mut slopes = vec![first_slope];
            for s in &slope_steps[1..] {
                slopes.push(slopes.last().unwrap() + s);
            }
            let mut coeffs = vec![first_coeff];
            for (j, &c) in cuts.iter().enumerate() {
                // breakpoint strictly between samples c−1 and c
                let b = xs[c - 1] + where_[j] * (xs[c] - xs[c - 1]);
                coeffs.push(coeffs[j] + (slopes[j] - slopes[j + 1]) * b);
            }
            let ys = xs
                .iter()
                .map(|&x| {
                    slopes
                        .iter()
                        .zip(&coeffs)
                        .map(|(p, t)| p * x + t)
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .collect();
            (SampleSet::new(xs, ys).unwrap(), n)
        })
}
