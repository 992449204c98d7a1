//! Command implementations behind the `tropfit` binary.
//!
//! Every command returns its output as a `String` so the binary stays a thin
//! argument parser and the commands can be tested without spawning processes.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use tropfit::{
    fit_polynomial, fit_rational, reference_samples, FitConfig, PuiseuxPoly, PuiseuxRational, SampleSet,
    StopRule, TropError,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Fit(#[from] TropError),
    #[error("malformed report: {0}")]
    Report(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 2 for bad input, 1 for environment failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Data and results in max-plus coordinates.
    Maxplus,
    /// Positive data; fitted in log coordinates, reported back in max-times.
    Maxtimes,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "maxplus" => Ok(Mode::Maxplus),
            "maxtimes" => Ok(Mode::Maxtimes),
            _ => Err(format!("unknown mode '{s}' (expected maxplus or maxtimes)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(format!("unknown output format '{s}' (expected json or csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Terms {
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub k: usize,
    pub delta: f64,
}

/// Machine-readable result of a fit.
///
/// In max-times mode coefficients, `delta_star`, `chebyshev_error` and trace
/// values are multiplicative (the exponentials of their max-plus values);
/// exponents are the same in both modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub mode: Mode,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub numerator: Terms,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Terms>,
    pub delta_star: f64,
    pub chebyshev_error: f64,
    pub trace: Vec<TracePoint>,
    pub stop_reason: String,
}

/// Rounds to 12 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

impl FitReport {
    /// The fitted function in max-plus coordinates.
    pub fn rational(&self) -> CliResult<PuiseuxRational> {
        let poly = |t: &Terms| -> CliResult<PuiseuxPoly> {
            let coeffs = match self.mode {
                Mode::Maxplus => t.coefficients.clone(),
                Mode::Maxtimes => t
                    .coefficients
                    .iter()
                    .map(|&c| {
                        if c > 0.0 {
                            Ok(c.ln())
                        } else {
                            Err(CliError::Input(format!(
                                "max-times coefficient {c} is not positive"
                            )))
                        }
                    })
                    .collect::<CliResult<_>>()?,
            };
            Ok(PuiseuxPoly::from_parts(&t.exponents, &coeffs)?)
        };
        let denominator = match &self.denominator {
            Some(d) => poly(d)?,
            None => PuiseuxPoly::new([(0.0, 0.0)])?,
        };
        Ok(PuiseuxRational::new(poly(&self.numerator)?, denominator))
    }

    /// Evaluates the fitted function at `x`, in the report's mode.
    pub fn eval(&self, x: f64) -> CliResult<f64> {
        let r = self.rational()?;
        match self.mode {
            Mode::Maxplus => Ok(r.eval(x)),
            Mode::Maxtimes => Ok(r.eval_maxtimes(x)?),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Long-format CSV: one row per coefficient, trace step and scalar field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("field,index,exponent_or_value,coefficient\n");
        let mode = match self.mode {
            Mode::Maxplus => "maxplus",
            Mode::Maxtimes => "maxtimes",
        };
        let _ = writeln!(out, "mode,,{mode},");
        let _ = writeln!(out, "n,,{},", self.n);
        if let Some(l) = self.l {
            let _ = writeln!(out, "l,,{l},");
        }
        let mut terms = |name: &str, t: &Terms| {
            for (i, (p, c)) in t.exponents.iter().zip(&t.coefficients).enumerate() {
                let _ = writeln!(out, "{name},{},{p},{c}", i + 1);
            }
        };
        terms("numerator", &self.numerator);
        if let Some(d) = &self.denominator {
            terms("denominator", d);
        }
        let _ = writeln!(out, "delta_star,,{},", self.delta_star);
        let _ = writeln!(out, "chebyshev_error,,{},", self.chebyshev_error);
        for t in &self.trace {
            let _ = writeln!(out, "trace,{},{},", t.k, t.delta);
        }
        let _ = writeln!(out, "stop_reason,,{},", self.stop_reason);
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Parses two-column comma-separated data. A first row that is not numeric
/// is taken as a header; blank lines are skipped.
pub fn parse_csv(text: &str) -> CliResult<Vec<(f64, f64)>> {
    let mut points = Vec::new();
    let mut first = true;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Vec<Option<f64>> = cells.iter().map(|c| c.parse::<f64>().ok()).collect();
        let header = first && parsed.iter().any(Option::is_none);
        first = false;
        if header {
            continue;
        }
        if cells.len() != 2 {
            return Err(CliError::Csv {
                line: idx + 1,
                message: format!("expected 2 columns, found {}", cells.len()),
            });
        }
        let mut pair = [0.0; 2];
        for (slot, (cell, value)) in pair.iter_mut().zip(cells.iter().zip(&parsed)) {
            *slot = match value {
                Some(v) if v.is_finite() => *v,
                _ => {
                    return Err(CliError::Csv {
                        line: idx + 1,
                        message: format!("'{cell}' is not a finite number"),
                    })
                }
            };
        }
        points.push((pair[0], pair[1]));
    }
    if points.is_empty() {
        return Err(CliError::Input("no data rows".into()));
    }
    Ok(points)
}

fn load_samples(text: &str, mode: Mode) -> CliResult<SampleSet> {
    let points = parse_csv(text)?;
    Ok(match mode {
        Mode::Maxplus => SampleSet::from_points(&points)?,
        Mode::Maxtimes => {
            let (xs, ys): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
            SampleSet::from_maxtimes(&xs, &ys)?
        }
    })
}

/// The reference data set as CSV with a header row. Values are written with
/// the shortest representation that parses back to the same `f64`.
pub fn gen_fixture() -> String {
    let mut out = String::from("x,y\n");
    for (x, y) in reference_samples().points() {
        let _ = writeln!(out, "{x},{y}");
    }
    out
}

pub struct PolyArgs {
    pub n: usize,
    pub mode: Mode,
}

pub struct RationalArgs {
    pub n: usize,
    pub l: usize,
    pub epsilon: f64,
    pub max_iter: usize,
    pub stop_rule: StopRule,
    pub mode: Mode,
}

impl RationalArgs {
    pub fn new(n: usize, l: usize) -> Self {
        Self {
            n,
            l,
            epsilon: FitConfig::DEFAULT_EPSILON,
            max_iter: FitConfig::DEFAULT_ITERATION_CAP,
            stop_rule: StopRule::default(),
            mode: Mode::Maxplus,
        }
    }
}

fn terms(mode: Mode, exponents: &[f64], coefficients: &[f64]) -> Terms {
    let coefficient = |c: f64| match mode {
        Mode::Maxplus => c,
        Mode::Maxtimes => c.exp(),
    };
    Terms {
        exponents: exponents.iter().map(|&p| round_sig(p)).collect(),
        coefficients: coefficients.iter().map(|&c| round_sig(coefficient(c))).collect(),
    }
}

fn delta_value(mode: Mode, delta: f64) -> f64 {
    round_sig(match mode {
        Mode::Maxplus => delta,
        Mode::Maxtimes => delta.exp(),
    })
}

fn error_value(mode: Mode, delta: f64) -> f64 {
    round_sig(match mode {
        Mode::Maxplus => delta / 2.0,
        Mode::Maxtimes => (delta / 2.0).exp(),
    })
}

pub fn fit_poly_report(csv: &str, args: &PolyArgs) -> CliResult<FitReport> {
    let samples = load_samples(csv, args.mode)?;
    let fit = fit_polynomial(&samples, args.n)?;
    Ok(FitReport {
        mode: args.mode,
        n: args.n,
        l: None,
        numerator: terms(args.mode, &fit.exponents, &fit.coefficients),
        denominator: None,
        delta_star: delta_value(args.mode, fit.delta_star),
        chebyshev_error: error_value(args.mode, fit.delta_star),
        trace: vec![TracePoint {
            k: 1,
            delta: delta_value(args.mode, fit.delta_star),
        }],
        stop_reason: "closed-form".into(),
    })
}

pub fn fit_rational_report(csv: &str, args: &RationalArgs) -> CliResult<FitReport> {
    let samples = load_samples(csv, args.mode)?;
    let config = FitConfig {
        epsilon: args.epsilon,
        iteration_cap: args.max_iter,
        stop_rule: args.stop_rule,
        ..FitConfig::new(args.n, args.l)
    };
    let fit = fit_rational(&samples, config)?;
    Ok(FitReport {
        mode: args.mode,
        n: args.n,
        l: Some(args.l),
        numerator: terms(args.mode, &fit.numerator_exponents, &fit.numerator_coefficients),
        denominator: Some(terms(
            args.mode,
            &fit.denominator_exponents,
            &fit.denominator_coefficients,
        )),
        delta_star: delta_value(args.mode, fit.delta_star),
        chebyshev_error: error_value(args.mode, fit.delta_star),
        trace: fit
            .trace
            .iter()
            .map(|t| TracePoint {
                k: t.k,
                delta: delta_value(args.mode, t.delta),
            })
            .collect(),
        stop_reason: fit.stop_reason.as_str().into(),
    })
}

/// `x,value` CSV for the given abscissae.
pub fn eval_points(report: &FitReport, xs: &[f64]) -> CliResult<String> {
    let mut out = String::from("x,value\n");
    for &x in xs {
        let v = report.eval(x)?;
        let _ = writeln!(out, "{x},{}", round_sig(v));
    }
    Ok(out)
}

/// `steps` uniformly spaced points of the fitted curve on `[from, to]`.
pub fn sample_curve(report: &FitReport, from: f64, to: f64, steps: usize) -> CliResult<String> {
    if !(from.is_finite() && to.is_finite() && from < to) {
        return Err(CliError::Input(format!(
            "invalid range: need from < to, got [{from}, {to}]"
        )));
    }
    if steps < 2 {
        return Err(CliError::Input(format!(
            "invalid range: steps must be at least 2, got {steps}"
        )));
    }
    let xs: Vec<f64> = (0..steps)
        .map(|i| round_sig(from + (to - from) * i as f64 / (steps - 1) as f64))
        .collect();
    eval_points(report, &xs)
}
