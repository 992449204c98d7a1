//! Fits the reference data set for a few (N, L) settings and prints traces.

use std::time::Instant;

use tropfit::{fit_polynomial, fit_rational, reference_samples, FitConfig};

fn main() -> tropfit::Result<()> {
    let samples = reference_samples();
    let poly = fit_polynomial(&samples, 2)?;
    println!("polynomial N=2: delta = {:.4}", poly.delta_star);
    for (n, l) in [(2, 2), (3, 3), (4, 4), (5, 3), (6, 5), (7, 5)] {
        let start = Instant::now();
        let fit = fit_rational(&samples, FitConfig::new(n, l))?;
        let trace: Vec<String> = fit
            .trace
            .iter()
            .take(20)
            .map(|t| format!("{:.4}", t.delta))
            .collect();
        println!(
            "N={n} L={l}: delta* = {:.4} at step {} ({}, {} steps, {:.2?})\n  {}",
            fit.delta_star,
            fit.selected_step,
            fit.stop_reason,
            fit.trace.len(),
            start.elapsed(),
            trace.join(" ")
        );
    }
    Ok(())
}
