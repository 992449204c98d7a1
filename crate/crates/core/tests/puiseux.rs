use proptest::prelude::*;
use tropfit::scalar::{maxplus_to_maxtimes, maxtimes_to_maxplus};
use tropfit::{vandermonde, PuiseuxPoly, TropVector};

const TOL: f64 = 1e-9;

fn terms(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-5.0..5.0f64, -10.0..10.0f64), 1..=max)
}

/// A slope with `0.5 ≤ |p| ≤ 4`. The lower bound keeps every crossing of a
/// rising and a falling line inside `[−20, 20]` (coefficients are in
/// `[−10, 10]`); the upper bound keeps the error of a `1e-3` grid below
/// `h·ab/(a+b) ≤ 2e-3` for active slopes `a` and `−b`.
fn slope(positive: bool) -> impl Strategy<Value = f64> {
    (0.5..4.0f64).prop_map(move |p| if positive { p } else { -p })
}

/// At least one negative and one positive exponent, possibly a zero one.
fn mixed_sign() -> impl Strategy<Value = Vec<(f64, f64)>> {
    let coeff = || -10.0..10.0f64;
    (
        prop::collection::vec((slope(false), coeff()), 1..=3),
        prop::collection::vec((slope(true), coeff()), 1..=3),
        prop::option::of(coeff()),
    )
        .prop_map(|(neg, pos, zero)| neg.into_iter().chain(pos).chain(zero.map(|c| (0.0, c))).collect())
}

fn grid_min(p: &PuiseuxPoly) -> f64 {
    (0..=40_000)
        .map(|i| p.eval(-20.0 + i as f64 * 1e-3))
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #[test]
    fn evaluation_is_convex(t in terms(6), x1 in -10.0..10.0f64, h in 0.01..5.0f64, s in 0.0..1.0f64) {
        let p = PuiseuxPoly::new(t).unwrap();
        let x3 = x1 + h;
        let x2 = x1 + s * h;
        let chord = (1.0 - s) * p.eval(x1) + s * p.eval(x3);
        prop_assert!(p.eval(x2) <= chord + TOL);
    }

    #[test]
    fn minimum_matches_grid_search(t in mixed_sign()) {
        let p = PuiseuxPoly::new(t).unwrap();
        let m = p.minimum().expect("mixed-sign polynomials are bounded below");
        let g = grid_min(&p);
        prop_assert!(g >= m.mu - TOL, "grid {} below claimed minimum {}", g, m.mu);
        prop_assert!(g - m.mu <= 2e-3, "grid {} vs mu {}", g, m.mu);
        for end in [m.lo.value(), m.hi.value()].into_iter().flatten() {
            prop_assert!((p.eval(end) - m.mu).abs() <= TOL);
        }
        prop_assert!((p.eval(m.representative()) - m.mu).abs() <= TOL);
    }

    /// The minimum of a max of lines is attained at a crossing of two of them
    /// (or anywhere, for a lone zero slope), so the least value over all
    /// pairwise crossings is exact.
    #[test]
    fn minimum_matches_crossing_oracle(t in terms(6)) {
        let p = PuiseuxPoly::new(t).unwrap();
        let ms = p.monomials();
        let mut candidates: Vec<f64> = vec![0.0];
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                candidates.push((b.coeff - a.coeff) / (a.exponent - b.exponent));
            }
        }
        let oracle = candidates.iter().map(|&x| p.eval(x)).fold(f64::INFINITY, f64::min);
        let neg = ms.iter().any(|m| m.exponent < -1e-12);
        let pos = ms.iter().any(|m| m.exponent > 1e-12);
        match p.minimum() {
            Some(m) => {
                prop_assert!(neg == pos);
                prop_assert!((m.mu - oracle).abs() <= 1e-9 * (1.0 + oracle.abs()), "mu {} oracle {}", m.mu, oracle);
            }
            None => prop_assert!(neg != pos),
        }
    }

    #[test]
    fn one_signed_exponents_have_no_minimum(t in terms(6), positive in any::<bool>()) {
        let t: Vec<_> = t.into_iter().map(|(p, c)| (if positive { p.abs() + 0.1 } else { -p.abs() - 0.1 }, c)).collect();
        prop_assert!(PuiseuxPoly::new(t).unwrap().minimum().is_none());
    }

    #[test]
    fn canonicalization_preserves_values(
        t in terms(4),
        dup in prop::collection::vec((0..4usize, -10.0..10.0f64), 0..4),
        xs in prop::collection::vec(-10.0..10.0f64, 100),
    ) {
        // raw: the terms plus extra copies of some exponents with other coefficients
        let mut raw = t.clone();
        raw.extend(dup.iter().map(|&(i, c)| (t[i % t.len()].0, c)));
        let p = PuiseuxPoly::new(raw.clone()).unwrap();
        let mut exps: Vec<f64> = p.monomials().iter().map(|m| m.exponent).collect();
        let n = exps.len();
        exps.dedup();
        prop_assert_eq!(exps.len(), n);
        for x in xs {
            let direct = raw.iter().map(|&(e, c)| e * x + c).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!((p.eval(x) - direct).abs() <= TOL);
        }
    }

    #[test]
    fn maxtimes_evaluation_is_isomorphic(t in terms(5), v in 1e-2..1e2f64) {
        let p = PuiseuxPoly::new(t.clone()).unwrap();
        let direct = t
            .iter()
            .map(|&(e, c)| maxplus_to_maxtimes(maxtimes_to_maxplus(c.exp()).unwrap()) * v.powf(e))
            .fold(0.0, f64::max);
        let via_log = p.eval(v.ln()).exp();
        prop_assert!((p.eval_maxtimes(v).unwrap() - direct).abs() <= 1e-9 * direct);
        prop_assert!((via_log - direct).abs() <= 1e-9 * direct);
    }

    #[test]
    fn vandermonde_product_is_evaluation(
        t in terms(4),
        xs in prop::collection::vec(-3.0..3.0f64, 1..6),
    ) {
        let exps: Vec<f64> = t.iter().map(|m| m.0).collect();
        let coeffs: Vec<f64> = t.iter().map(|m| m.1).collect();
        let x = vandermonde(&xs.iter().map(|&v| v.into()).collect::<Vec<_>>(), &exps).unwrap();
        let values = x.matvec(&TropVector::from_finite(&coeffs)).unwrap();
        let p = PuiseuxPoly::from_parts(&exps, &coeffs).unwrap();
        for (v, &xi) in values.entries().iter().zip(&xs) {
            prop_assert!((v.to_f64() - p.eval(xi)).abs() <= TOL);
        }
    }
}
