//! Sampling a solved problem over an x grid.
//!
//! Every grid point is independent, so with the default `parallel` feature
//! the rows are evaluated with rayon; the `_seq` twins always run on the
//! current thread and produce bit-identical output (each row's arithmetic
//! does not depend on scheduling).

use crate::cauchy::{CauchyError, CauchySolution};
use crate::mittag_leffler::SeriesControl;
use crate::odd_fraction::OddFraction;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Uniform grid specification, endpoints inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub x_start: f64,
    pub x_end: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        assert!(self.steps >= 2, "grid needs at least two points");
        assert!(self.x_end > self.x_start, "grid must be increasing");
        let h = (self.x_end - self.x_start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.x_start + h * i as f64)
            .collect()
    }
}

/// One sampled row: both evaluation routes and their absolute difference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplePoint {
    pub x: f64,
    pub y_series: f64,
    pub y_exp: f64,
    pub abs_diff: f64,
}

fn sample_one(
    sol: &CauchySolution,
    odd: &OddFraction,
    x: f64,
    rule_order: usize,
    ctl: &SeriesControl,
) -> Result<SamplePoint, CauchyError> {
    let y_series = sol.eval_series(x, ctl)?;
    let y_exp = sol.eval_exp(odd, x, rule_order)?;
    Ok(SamplePoint {
        x,
        y_series,
        y_exp,
        abs_diff: (y_series - y_exp).abs(),
    })
}

/// Evaluates both solution forms at every grid point.
#[cfg(feature = "parallel")]
pub fn sample_solution(
    sol: &CauchySolution,
    odd: &OddFraction,
    xs: &[f64],
    rule_order: usize,
    ctl: &SeriesControl,
) -> Result<Vec<SamplePoint>, CauchyError> {
    xs.par_iter()
        .map(|&x| sample_one(sol, odd, x, rule_order, ctl))
        .collect()
}

/// Evaluates both solution forms at every grid point.
#[cfg(not(feature = "parallel"))]
pub fn sample_solution(
    sol: &CauchySolution,
    odd: &OddFraction,
    xs: &[f64],
    rule_order: usize,
    ctl: &SeriesControl,
) -> Result<Vec<SamplePoint>, CauchyError> {
    sample_solution_seq(sol, odd, xs, rule_order, ctl)
}

/// Sequential twin of [`sample_solution`]; kept unconditionally for
/// benchmarking the parallel speedup against.
pub fn sample_solution_seq(
    sol: &CauchySolution,
    odd: &OddFraction,
    xs: &[f64],
    rule_order: usize,
    ctl: &SeriesControl,
) -> Result<Vec<SamplePoint>, CauchyError> {
    xs.iter()
        .map(|&x| sample_one(sol, odd, x, rule_order, ctl))
        .collect()
}

/// Applies f at every point, in parallel when the feature is on.
#[cfg(feature = "parallel")]
pub fn map_grid<F>(xs: &[f64], f: F) -> Vec<f64>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    xs.par_iter().map(|&x| f(x)).collect()
}

/// Applies f at every point, in parallel when the feature is on.
#[cfg(not(feature = "parallel"))]
pub fn map_grid<F>(xs: &[f64], f: F) -> Vec<f64>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    xs.iter().map(|&x| f(x)).collect()
}
