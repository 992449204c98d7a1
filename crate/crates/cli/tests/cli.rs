use std::path::Path;
use std::process::{Command, Output};

use tropfit_cli::{
    eval_points, fit_poly_report, fit_rational_report, gen_fixture, parse_csv, round_sig, sample_curve,
    CliError, FitReport, Mode, PolyArgs, RationalArgs,
};

fn tropfit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropfit"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn values(csv: &str) -> Vec<(f64, f64)> {
    parse_csv(csv).unwrap()
}

#[test]
fn csv_header_is_optional() {
    assert_eq!(values("x,y\n1,2\n3,4\n"), vec![(1.0, 2.0), (3.0, 4.0)]);
    assert_eq!(values("1, 2\n\n3,4"), vec![(1.0, 2.0), (3.0, 4.0)]);
    assert_eq!(values("1e-1,-2.5\n"), vec![(0.1, -2.5)]);
}

#[test]
fn malformed_csv_is_rejected() {
    assert!(matches!(parse_csv(""), Err(CliError::Input(_))));
    assert!(matches!(parse_csv("x,y\n"), Err(CliError::Input(_))));
    assert!(matches!(
        parse_csv("1,2\n3,x\n"),
        Err(CliError::Csv { line: 2, .. })
    ));
    assert!(matches!(parse_csv("1,2,3\n"), Err(CliError::Csv { line: 1, .. })));
    assert!(matches!(
        parse_csv("1,2\n3\n"),
        Err(CliError::Csv { line: 2, .. })
    ));
    assert!(matches!(parse_csv("1,inf\n"), Err(CliError::Csv { .. })));
    // only the first row may be a header
    assert!(parse_csv("1,2\nx,y\n").is_err());
}

#[test]
fn too_many_monomials_is_an_input_error() {
    let e = fit_poly_report(
        "0,0\n1,1\n",
        &PolyArgs {
            n: 3,
            mode: Mode::Maxplus,
        },
    )
    .unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert!(fit_rational_report("0,0\n1,1\n", &RationalArgs::new(1, 3)).is_err());
}

#[test]
fn maxtimes_mode_needs_positive_data() {
    let args = PolyArgs {
        n: 1,
        mode: Mode::Maxtimes,
    };
    assert!(fit_poly_report("0,1\n1,2\n", &args).is_err());
    assert!(fit_poly_report("1,-1\n2,2\n", &args).is_err());
}

#[test]
fn report_round_trips() {
    let report = fit_rational_report(&gen_fixture(), &RationalArgs::new(3, 3)).unwrap();
    let json = report.to_json();
    let back = FitReport::from_json(&json).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.to_json(), json);
    assert_eq!(round_sig(report.delta_star), report.delta_star);
    assert!(report.trace.iter().all(|t| t.delta.is_finite()));
    assert!(!json.contains("NaN") && !json.contains("inf") && !json.contains("null"));
}

#[test]
fn twelve_significant_digits() {
    assert_eq!(round_sig(0.434414703791818), 0.434414703792);
    assert_eq!(round_sig(-123456.78901234567), -123456.789012);
    assert_eq!(round_sig(0.0), 0.0);
}

#[test]
fn polynomial_report_shape() {
    let report = fit_poly_report(
        &gen_fixture(),
        &PolyArgs {
            n: 2,
            mode: Mode::Maxplus,
        },
    )
    .unwrap();
    assert_eq!(report.l, None);
    assert_eq!(report.denominator, None);
    assert!((report.delta_star - 0.4344).abs() < 1e-3);
    assert!((report.chebyshev_error - report.delta_star / 2.0).abs() < 1e-11);
    let json = report.to_json();
    assert!(!json.contains("\"l\"") && !json.contains("denominator"));
}

#[test]
fn maxtimes_report_is_the_exponential_of_maxplus() {
    let csv = gen_fixture();
    let exp_csv: String = values(&csv)
        .iter()
        .map(|(x, y)| format!("{},{}\n", x.exp(), y.exp()))
        .collect();
    let plus = fit_rational_report(&csv, &RationalArgs::new(3, 2)).unwrap();
    let times = fit_rational_report(
        &exp_csv,
        &RationalArgs {
            mode: Mode::Maxtimes,
            ..RationalArgs::new(3, 2)
        },
    )
    .unwrap();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-6 * (1.0 + b.abs());
    assert!(close(times.delta_star, plus.delta_star.exp()));
    assert!(close(times.chebyshev_error, (plus.delta_star / 2.0).exp()));
    for (a, b) in times.numerator.exponents.iter().zip(&plus.numerator.exponents) {
        assert!(close(*a, *b));
    }
    for (a, b) in times
        .numerator
        .coefficients
        .iter()
        .zip(&plus.numerator.coefficients)
    {
        assert!(close(*a, b.exp()));
    }
    assert!(close(
        times.eval(2.0).unwrap(),
        plus.eval(2.0_f64.ln()).unwrap().exp()
    ));
}

#[test]
fn sampling_the_two_by_two_fit() {
    let report = fit_rational_report(&gen_fixture(), &RationalArgs::new(2, 2)).unwrap();
    let out = eval_points(&report, &[0.0]).unwrap();
    let v: f64 = out
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((v - 0.0950).abs() < 5e-5, "{v}");

    let curve = sample_curve(&report, 0.0, 2.0, 201).unwrap();
    let rows = values(&curve);
    assert_eq!(rows.len(), 201);
    assert_eq!(rows[0].0, 0.0);
    assert_eq!(rows[200].0, 2.0);
    assert!(rows.iter().all(|(x, y)| x.is_finite() && y.is_finite()));
}

#[test]
fn sampling_a_constant_fit() {
    let report = fit_poly_report(
        "0,0\n1,1\n2,0\n",
        &PolyArgs {
            n: 2,
            mode: Mode::Maxplus,
        },
    )
    .unwrap();
    let rows = values(&sample_curve(&report, -5.0, 5.0, 11).unwrap());
    assert!(rows.iter().all(|&(_, y)| (y - 0.5).abs() < 1e-12), "{rows:?}");
}

#[test]
fn sampling_range_is_checked() {
    let report = fit_poly_report(
        "0,0\n1,1\n",
        &PolyArgs {
            n: 1,
            mode: Mode::Maxplus,
        },
    )
    .unwrap();
    assert!(sample_curve(&report, 0.0, 1.0, 1).is_err());
    assert!(sample_curve(&report, 1.0, 1.0, 5).is_err());
    assert!(sample_curve(&report, 2.0, 1.0, 5).is_err());
    assert!(sample_curve(&report, 0.0, f64::NAN, 5).is_err());
}

#[test]
fn binary_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(tropfit(&["gen-fixture", "--out", "fixture.csv"], d)
        .status
        .success());
    let fixture = std::fs::read_to_string(d.join("fixture.csv")).unwrap();
    assert_eq!(fixture, gen_fixture());

    let fit = tropfit(&["fit", "rational", "fixture.csv", "--n", "4", "--l", "4"], d);
    assert!(fit.status.success());
    let again = tropfit(&["fit", "rational", "fixture.csv", "--n", "4", "--l", "4"], d);
    assert_eq!(fit.stdout, again.stdout, "reports are byte-identical across runs");
    std::fs::write(d.join("report.json"), &fit.stdout).unwrap();
    let report = FitReport::from_json(std::str::from_utf8(&fit.stdout).unwrap()).unwrap();
    assert!((report.delta_star - 0.0590).abs() < 1e-3);

    let sample = tropfit(
        &[
            "sample",
            "report.json",
            "--from",
            "-0.5",
            "--to",
            "2.5",
            "--steps",
            "7",
        ],
        d,
    );
    assert!(sample.status.success());
    let rows = values(std::str::from_utf8(&sample.stdout).unwrap());
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0].0, -0.5);

    let eval = tropfit(&["eval", "report.json", "1.5", "-1"], d);
    assert!(eval.status.success());
    assert_eq!(values(std::str::from_utf8(&eval.stdout).unwrap()).len(), 2);

    let csv = tropfit(&["fit", "poly", "fixture.csv", "--n", "2", "--output", "csv"], d);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("field,index,"));
    assert!(text.contains("delta_star,,0.434414703792,"));
}

#[test]
fn binary_input_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("empty.csv"), "").unwrap();
    std::fs::write(d.join("bad.csv"), "x,y\n1,2\n3,oops\n").unwrap();

    let empty = tropfit(&["fit", "poly", "empty.csv", "--n", "1"], d);
    assert_eq!(empty.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&empty.stderr).contains("no data rows"));

    let bad = tropfit(&["fit", "poly", "bad.csv", "--n", "1"], d);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3"));

    assert_ne!(
        tropfit(&["fit", "poly", "missing.csv", "--n", "1"], d)
            .status
            .code(),
        Some(0)
    );
    assert_ne!(
        tropfit(&["fit", "rational", "bad.csv", "--n", "1"], d)
            .status
            .code(),
        Some(0)
    );
    assert_ne!(
        tropfit(&["fit", "poly", "empty.csv", "--n", "1", "--mode", "minplus"], d)
            .status
            .code(),
        Some(0)
    );
}
