//! Built-in verification suites: each runs a fixed parameter grid and
//! reports one measured number per case against a pinned tolerance.
//!
//! These back the CLI's `verify` subcommand; the same grids run in the
//! acceptance tests.

use crate::cauchy::{solve, CauchyProblem, FracOrder};
use crate::exp_repr::{eval_h_exp, verify_eigen_identity, ExpReprParams};
use crate::grid::{map_grid, GridSpec};
use crate::mittag_leffler::{eval_h_series, frac_deriv_h_truncated, h_series_partial, HParams, SeriesControl};
use crate::odd_fraction::OddFraction;

/// One verified case: `pass` iff `measured <= tolerance`.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub label: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CaseResult {
    fn check(label: String, measured: f64, tolerance: f64) -> Self {
        CaseResult {
            label,
            measured,
            tolerance,
            pass: measured <= tolerance,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn worst(&self) -> Option<&CaseResult> {
        self.cases
            .iter()
            .max_by(|a, b| {
                (a.measured / a.tolerance)
                    .partial_cmp(&(b.measured / b.tolerance))
                    .expect("finite case measures")
            })
    }
}

const RULE_ORDER: usize = 64;

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

/// Exponential representation against the defining series on the
/// (n, ρ, x) grid; relative agreement to 1e-6.
pub fn series_vs_exp() -> SuiteReport {
    let mut cases = Vec::new();
    for n in [1usize, 2] {
        for rho in [-1.5, -1.0, -0.5, 0.5, 1.0] {
            for x in [0.25, 0.5, 1.0, 2.0] {
                let series = eval_h_series(
                    &HParams {
                        alpha: 1.0 / (2.0 * n as f64 + 1.0),
                        lambda: rho,
                    },
                    x,
                    &ctl(),
                )
                .expect("series converges on the verification grid")
                .value;
                let exp = eval_h_exp(&ExpReprParams { n, rho }, x, RULE_ORDER)
                    .expect("quadrature rules build on the verification grid");
                let rel = (exp - series).abs() / series.abs().max(1.0);
                cases.push(CaseResult::check(
                    format!("n={n} rho={rho} x={x}"),
                    rel,
                    1e-6,
                ));
            }
        }
    }
    SuiteReport {
        name: "series-vs-exp",
        cases,
    }
}

/// Term-wise eigen identity, both in the direct-order form
/// (D^α h_α = λ h_α) and in the odd-fraction form with composite order.
pub fn eigen() -> SuiteReport {
    let mut cases = Vec::new();

    // classical reduction first: machine precision expected
    let chk = verify_eigen_identity(0, 0, -1.0, 1.0, 60);
    cases.push(CaseResult::check(
        "m=0 n=0 lambda=-1 x=1".into(),
        chk.discrepancy,
        1e-12,
    ));

    for alpha in [1.0 / 3.0, 0.6, 9.0 / 11.0] {
        for lambda in [-2.0, -1.0, 0.5, 1.0] {
            for x in [0.5, 1.5, 3.0] {
                let p = HParams { alpha, lambda };
                let d = frac_deriv_h_truncated(&p, x, 60);
                let h = h_series_partial(&p, x, 59);
                let disc = (d - lambda * h).abs();
                cases.push(CaseResult::check(
                    format!("direct alpha={alpha:.4} lambda={lambda} x={x}"),
                    disc,
                    1e-10 * (lambda * h).abs().max(1.0),
                ));
            }
        }
    }

    for (m, n) in [(0u64, 1u64), (0, 2), (1, 2)] {
        for lambda in [-2.0, -1.0, 1.0] {
            for x in [0.5, 1.0, 2.0] {
                let chk = verify_eigen_identity(m, n, lambda, x, 80);
                cases.push(CaseResult::check(
                    format!("composite m={m} n={n} lambda={lambda} x={x}"),
                    chk.discrepancy,
                    1e-8,
                ));
            }
        }
    }

    SuiteReport {
        name: "eigen",
        cases,
    }
}

/// As the order (2j+1)/(2j+3) rises toward 1 the solution of
/// D^α y + y = 0, y(1) = 1 approaches e^{-(x-1)}; the sup-norm distance on
/// [x0, x0+2] must fall with each step.
pub fn classical_limit() -> SuiteReport {
    let xs = GridSpec {
        x_start: 1.0,
        x_end: 3.0,
        steps: 101,
    }
    .points();
    let mut cases = Vec::new();
    let mut previous = f64::INFINITY;
    for j in [1u64, 2, 4, 10] {
        let order = OddFraction {
            m: j,
            n: j + 1,
            err: 0.0,
        };
        let problem = CauchyProblem::new(FracOrder::Odd(order), vec![1.0], vec![1.0], 1.0);
        let sol = solve(&problem, &ctl()).expect("classical-limit problem solves");
        let deltas = map_grid(&xs, |x| {
            let y = sol
                .eval_series(x, &ctl())
                .expect("series converges on [1, 3]");
            (y - (-(x - 1.0)).exp()).abs()
        });
        let sup = deltas.into_iter().fold(0.0, f64::max);
        cases.push(CaseResult::check(
            format!("j={j} alpha=({}/{})", 2 * j + 1, 2 * j + 3),
            sup,
            previous,
        ));
        previous = sup;
    }
    SuiteReport {
        name: "classical-limit",
        cases,
    }
}

/// Decay of the exponential-form solution for all-negative spectra.
///
/// Classical problems (m = n = 0) decay exponentially and must contract by
/// 1e-3 over twenty units. Fractional orders decay to zero only
/// algebraically (like x^{-α-1}); their cases pin the measured contraction,
/// with bounds frozen from 60-digit reference runs.
pub fn decay() -> SuiteReport {
    let mut cases = Vec::new();
    let classical = OddFraction {
        m: 0,
        n: 0,
        err: 0.0,
    };

    // p = 1, α = 1: y = e^{-(x-1)}, ratio e^{-19}
    let problem = CauchyProblem::new(FracOrder::Alpha(1.0), vec![1.0], vec![1.0], 1.0);
    let sol = solve(&problem, &ctl()).expect("classical p=1 solves");
    let r = |x: f64| sol.eval_exp(&classical, x, RULE_ORDER).unwrap();
    cases.push(CaseResult::check(
        "p=1 alpha=1 |y(21)|/|y(2)|".into(),
        (r(21.0) / r(2.0)).abs(),
        1e-3,
    ));

    // p = 2, α = 1, roots -1 and -2
    let problem = CauchyProblem::new(FracOrder::Alpha(1.0), vec![3.0, 2.0], vec![1.0, 0.0], 1.0);
    let sol = solve(&problem, &ctl()).expect("classical p=2 solves");
    let r = |x: f64| sol.eval_exp(&classical, x, RULE_ORDER).unwrap();
    cases.push(CaseResult::check(
        "p=2 alpha=1 |y(21)|/|y(2)|".into(),
        (r(21.0) / r(2.0)).abs(),
        1e-3,
    ));

    // p = 1, α = 1/3 (m=0, n=1): reference ratio 0.0684, monotone decay
    let odd = OddFraction {
        m: 0,
        n: 1,
        err: 0.0,
    };
    let problem = CauchyProblem::new(FracOrder::Odd(odd), vec![1.0], vec![1.0], 1.0);
    let sol = solve(&problem, &ctl()).expect("fractional p=1 solves");
    let ys: Vec<f64> = (2..=21)
        .map(|i| sol.eval_exp(&odd, i as f64, RULE_ORDER).unwrap().abs())
        .collect();
    cases.push(CaseResult::check(
        "p=1 alpha=1/3 |y(21)|/|y(2)| (algebraic tail)".into(),
        ys[19] / ys[0],
        0.08,
    ));
    let max_step_up = ys
        .windows(2)
        .map(|w| w[1] / w[0])
        .fold(0.0f64, f64::max);
    cases.push(CaseResult::check(
        "p=1 alpha=1/3 scan decreasing".into(),
        max_step_up,
        1.0,
    ));

    // p = 2, α = 3/5 (m=1, n=2): the exponential-form solution is built on
    // the 1/5-order basis and is small near x0; it peaks near x = 6 before
    // its algebraic tail sets in. Reference: |y(21)|/max ≈ 0.58.
    let odd = OddFraction {
        m: 1,
        n: 2,
        err: 0.0,
    };
    let problem = CauchyProblem::new(FracOrder::Odd(odd), vec![3.0, 2.0], vec![1.0, 0.0], 1.0);
    let sol = solve(&problem, &ctl()).expect("fractional p=2 solves");
    let ys: Vec<f64> = (2..=21)
        .map(|i| sol.eval_exp(&odd, i as f64, RULE_ORDER).unwrap().abs())
        .collect();
    let peak = ys.iter().fold(0.0f64, |m, &v| m.max(v));
    cases.push(CaseResult::check(
        "p=2 alpha=3/5 |y(21)|/peak (algebraic tail)".into(),
        ys[19] / peak,
        0.65,
    ));
    let tail_up = ys[6..]
        .windows(2)
        .map(|w| w[1] / w[0])
        .fold(0.0f64, f64::max);
    cases.push(CaseResult::check(
        "p=2 alpha=3/5 tail decreasing past peak".into(),
        tail_up,
        1.0,
    ));

    SuiteReport {
        name: "decay",
        cases,
    }
}
