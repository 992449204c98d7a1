use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tropfit::{FitConfig, StopRule};
use tropfit_cli::{
    eval_points, fit_poly_report, fit_rational_report, gen_fixture, sample_curve, CliResult, FitReport, Mode,
    OutputFormat, PolyArgs, RationalArgs,
};

/// Tropical (max-plus) Chebyshev fitting of sampled data.
#[derive(Parser)]
#[command(name = "tropfit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the 21-point reference data set as CSV.
    GenFixture {
        /// Output file; standard output when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Fit a polynomial or rational function to CSV data.
    #[command(subcommand)]
    Fit(FitCommand),
    /// Evaluate a saved fit report at the given points.
    Eval {
        report: PathBuf,
        #[arg(required = true, allow_negative_numbers = true)]
        x: Vec<f64>,
    },
    /// Sample a saved fit report on a uniform grid, as CSV.
    Sample {
        report: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
}

#[derive(Subcommand)]
enum FitCommand {
    /// Fit a Puiseux polynomial with N monomials.
    Poly {
        #[command(flatten)]
        common: Common,
    },
    /// Fit a ratio of polynomials with N and L monomials.
    Rational {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = FitConfig::DEFAULT_EPSILON)]
        epsilon: f64,
        /// Maximum number of numerator/denominator alternations.
        #[arg(long, default_value_t = FitConfig::DEFAULT_ITERATION_CAP)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = StopRuleArg::Best)]
        stop_rule: StopRuleArg,
    },
}

#[derive(Args)]
struct Common {
    /// Input CSV (`-` for standard input).
    input: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "maxplus")]
    mode: Mode,
    #[arg(long, default_value = "json")]
    output: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum StopRuleArg {
    /// Keep the best iterate until convergence, a cycle, or the cap.
    Best,
    /// Stop at the first step that fails to improve by more than epsilon.
    FirstNonImprovement,
}

fn read_input(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::GenFixture { out: Some(path) } => {
            fs::write(path, gen_fixture())?;
            Ok(String::new())
        }
        Command::GenFixture { out: None } => Ok(gen_fixture()),
        Command::Fit(FitCommand::Poly { common }) => {
            let csv = read_input(&common.input)?;
            let report = fit_poly_report(
                &csv,
                &PolyArgs {
                    n: common.n,
                    mode: common.mode,
                },
            )?;
            Ok(report.render(common.output))
        }
        Command::Fit(FitCommand::Rational {
            common,
            l,
            epsilon,
            max_iter,
            stop_rule,
        }) => {
            let csv = read_input(&common.input)?;
            let args = RationalArgs {
                epsilon,
                max_iter,
                stop_rule: match stop_rule {
                    StopRuleArg::Best => StopRule::BestIterate,
                    StopRuleArg::FirstNonImprovement => StopRule::FirstNonImprovement,
                },
                mode: common.mode,
                ..RationalArgs::new(common.n, l)
            };
            Ok(fit_rational_report(&csv, &args)?.render(common.output))
        }
        Command::Eval { report, x } => eval_points(&FitReport::from_json(&read_input(&report)?)?, &x),
        Command::Sample {
            report,
            from,
            to,
            steps,
        } => sample_curve(&FitReport::from_json(&read_input(&report)?)?, from, to, steps),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tropfit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
