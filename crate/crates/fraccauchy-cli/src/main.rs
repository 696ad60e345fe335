//! `fraccauchy` — evaluate Mittag-Leffler functions, approximate fractional
//! orders by odd/odd rationals, solve linear constant-coefficient
//! fractional Cauchy problems in closed form, and run the built-in
//! verification suites.

mod output;
mod problem;

use clap::{Parser, Subcommand, ValueEnum};
use fraccauchy::cauchy::{solve, CauchyError};
use fraccauchy::grid::sample_solution;
use fraccauchy::mittag_leffler::{eval_e, eval_e2, SeriesControl, SeriesError};
use fraccauchy::odd_fraction::{approximate, ApproxError, OddFraction};
use fraccauchy::quad::QuadError;
use fraccauchy::verify::{self, SuiteReport};
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

const DEFAULT_QUAD_ORDER: usize = 64;
const QUAD_ORDER_ENV: &str = "FRACCAUCHY_QUAD_ORDER";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error(transparent)]
    Cauchy(#[from] CauchyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 I/O, 2 parse, 3 complex roots, 4 repeated roots, 5 convergence
    /// failure, 6 verification failure.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::InvalidProblem(_) => 2,
            CliError::Cauchy(e) => match e {
                CauchyError::ComplexRoots { .. } => 3,
                CauchyError::RepeatedRoots { .. } | CauchyError::SingularSystem { .. } => 4,
                CauchyError::NoConvergence
                | CauchyError::ZeroBasisValue { .. }
                | CauchyError::Series(_)
                | CauchyError::Quad(_) => 5,
            },
            CliError::Series(_) | CliError::Quad(_) | CliError::Approx(_) => 5,
            CliError::Verification(_) => 6,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "fraccauchy",
    version,
    about = "Mittag-Leffler functions and closed-form fractional Cauchy problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate E_alpha(z), or E_{alpha,beta}(z) when --beta is given
    Ml {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        #[arg(long, default_value_t = 500)]
        max_terms: usize,
        #[arg(long, default_value_t = 1e-15)]
        tail_tol: f64,
    },
    /// Find the smallest odd/odd rational (2m+1)/(2n+1) within eps of alpha
    Approx {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        eps: f64,
        /// Verify a given pair m n as a certificate instead of searching
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        check: Option<Vec<u64>>,
    },
    /// Solve the Cauchy problem described by a JSON file
    Solve {
        /// Path to the problem file
        problem: PathBuf,
        /// Write the sampled grid as CSV
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a gnuplot script next to the CSV (requires --out)
        #[arg(long, requires = "out")]
        plot: Option<PathBuf>,
    },
    /// Run a built-in verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    SeriesVsExp,
    Eigen,
    ClassicalLimit,
    Decay,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ml {
            alpha,
            beta,
            z,
            max_terms,
            tail_tol,
        } => cmd_ml(alpha, beta, z, max_terms, tail_tol),
        Command::Approx { alpha, eps, check } => cmd_approx(alpha, eps, check),
        Command::Solve { problem, out, plot } => cmd_solve(&problem, out.as_deref(), plot.as_deref()),
        Command::Verify { suite } => cmd_verify(suite),
    }
}

fn cmd_ml(
    alpha: f64,
    beta: Option<f64>,
    z: f64,
    max_terms: usize,
    tail_tol: f64,
) -> Result<(), CliError> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(CliError::InvalidProblem("alpha must be positive".into()));
    }
    if let Some(b) = beta {
        if b.is_nan() || b <= 0.0 {
            return Err(CliError::InvalidProblem("beta must be positive".into()));
        }
    }
    if max_terms == 0 || tail_tol.is_nan() || tail_tol <= 0.0 {
        return Err(CliError::InvalidProblem(
            "need max_terms >= 1 and tail_tol > 0".into(),
        ));
    }
    let ctl = SeriesControl { max_terms, tail_tol };
    let eval = match beta {
        None => eval_e(alpha, z, &ctl)?,
        Some(b) => eval_e2(alpha, b, z, &ctl)?,
    };
    println!("{}", eval.value);
    match beta {
        None => eprintln!("E_{alpha}({z}): {} terms, tail below {tail_tol:e}", eval.terms),
        Some(b) => eprintln!(
            "E_{{{alpha},{b}}}({z}): {} terms, tail below {tail_tol:e}",
            eval.terms
        ),
    }
    Ok(())
}

fn cmd_approx(alpha: f64, eps: f64, check: Option<Vec<u64>>) -> Result<(), CliError> {
    if alpha.is_nan() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(CliError::InvalidProblem("alpha must lie in (0, 1)".into()));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(CliError::InvalidProblem("eps must be positive".into()));
    }
    let f = match &check {
        None => approximate(alpha, eps)?,
        Some(pair) => {
            if pair[0] > pair[1] {
                return Err(CliError::InvalidProblem("check pair requires m <= n".into()));
            }
            OddFraction::for_alpha(alpha, pair[0], pair[1])
        }
    };
    println!(
        "m={} n={} value={} err={}",
        f.m,
        f.n,
        f.value(),
        f.err
    );
    if check.is_some() && f.err >= eps {
        return Err(CliError::Verification(format!(
            "pair ({}, {}) misses alpha={alpha} by {} (eps={eps})",
            f.m, f.n, f.err
        )));
    }
    Ok(())
}

fn quadrature_order(from_file: Option<usize>) -> Result<usize, CliError> {
    if let Some(order) = from_file {
        return Ok(order);
    }
    match std::env::var(QUAD_ORDER_ENV) {
        Err(_) => Ok(DEFAULT_QUAD_ORDER),
        Ok(text) => text
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| {
                CliError::InvalidProblem(format!(
                    "{QUAD_ORDER_ENV} must be a positive integer, got {text:?}"
                ))
            }),
    }
}

fn cmd_solve(
    path: &std::path::Path,
    out: Option<&std::path::Path>,
    plot: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let loaded = problem::load(path)?;
    let rule_order = quadrature_order(loaded.quadrature_order)?;

    let sol = solve(&loaded.problem, &loaded.ctl)?;
    let residuals = sol.initial_condition_residuals(&loaded.ctl)?;

    let alpha = loaded.problem.order.alpha();
    println!(
        "order: alpha={} (odd fraction {}/{}: m={} n={} err={})",
        alpha,
        loaded.odd.numerator(),
        loaded.odd.denominator(),
        loaded.odd.m,
        loaded.odd.n,
        loaded.odd.err
    );
    println!(
        "roots: {}",
        sol.roots.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")
    );
    println!(
        "coefficients: {}",
        sol.c.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")
    );
    println!(
        "initial-condition residuals: {}",
        residuals.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")
    );

    if let Some(csv_path) = out {
        let xs = loaded.grid.points();
        let rows = sample_solution(&sol, &loaded.odd, &xs, rule_order, &loaded.ctl)?;
        output::write_csv(csv_path, &rows)?;
        println!("wrote {} ({} rows)", csv_path.display(), rows.len());
        if let Some(plot_path) = plot {
            output::write_plot_script(plot_path, csv_path)?;
            println!("wrote {}", plot_path.display());
        }
    }
    Ok(())
}

fn print_report(report: &SuiteReport) {
    for case in &report.cases {
        println!(
            "{} {:<48} measured={:<12.5e} tolerance={:.5e}",
            if case.pass { "ok  " } else { "FAIL" },
            case.label,
            case.measured,
            case.tolerance
        );
    }
    let passed = report.cases.iter().filter(|c| c.pass).count();
    println!("suite {}: {passed}/{} cases pass", report.name, report.cases.len());
}

fn cmd_verify(suite: Suite) -> Result<(), CliError> {
    let report = match suite {
        Suite::SeriesVsExp => verify::series_vs_exp(),
        Suite::Eigen => verify::eigen(),
        Suite::ClassicalLimit => verify::classical_limit(),
        Suite::Decay => verify::decay(),
    };
    print_report(&report);
    if report.passed() {
        Ok(())
    } else {
        let worst = report.worst().expect("failing suite has cases");
        Err(CliError::Verification(format!(
            "{}: worst case {} measured {:e} above {:e}",
            report.name, worst.label, worst.measured, worst.tolerance
        )))
    }
}
