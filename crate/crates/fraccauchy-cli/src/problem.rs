//! Problem-file schema and validation.
//!
//! A problem is a JSON object:
//!
//! ```json
//! {
//!   "alpha": 0.6,                       // or {"m": 1, "n": 2}
//!   "a": [3.0, 2.0],
//!   "beta": [1.0, 0.0],
//!   "x0": 1.0,
//!   "grid": {"x_start": 1.0, "x_end": 4.0, "steps": 61},
//!   "quadrature_order": 64,             // optional
//!   "series": {"max_terms": 500, "tail_tol": 1e-15}   // optional
//! }
//! ```

use fraccauchy::cauchy::{CauchyProblem, FracOrder};
use fraccauchy::grid::GridSpec;
use fraccauchy::mittag_leffler::SeriesControl;
use fraccauchy::odd_fraction::{approximate, OddFraction};
use serde::Deserialize;

use crate::CliError;

/// Snap tolerance when a real order must be represented as an odd/odd
/// rational for the exponential route.
const ODD_SNAP_EPS: f64 = 1e-4;

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum AlphaField {
    Real(f64),
    Odd { m: u64, n: u64 },
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct GridField {
    pub x_start: f64,
    pub x_end: f64,
    pub steps: usize,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct SeriesField {
    #[serde(default = "default_max_terms")]
    pub max_terms: usize,
    #[serde(default = "default_tail_tol")]
    pub tail_tol: f64,
}

fn default_max_terms() -> usize {
    SeriesControl::default().max_terms
}

fn default_tail_tol() -> f64 {
    SeriesControl::default().tail_tol
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub alpha: AlphaField,
    pub a: Vec<f64>,
    pub beta: Vec<f64>,
    pub x0: f64,
    pub grid: GridField,
    #[serde(default)]
    pub quadrature_order: Option<usize>,
    #[serde(default)]
    pub series: Option<SeriesField>,
}

/// A validated problem ready for the solver.
pub struct LoadedProblem {
    pub problem: CauchyProblem,
    pub odd: OddFraction,
    pub grid: GridSpec,
    pub quadrature_order: Option<usize>,
    pub ctl: SeriesControl,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidProblem(msg.into())
}

impl ProblemFile {
    pub fn validate(self) -> Result<LoadedProblem, CliError> {
        if self.a.is_empty() {
            return Err(invalid("coefficient list `a` must not be empty"));
        }
        if self.a.len() != self.beta.len() {
            return Err(invalid(format!(
                "need one initial value per coefficient: |a| = {}, |beta| = {}",
                self.a.len(),
                self.beta.len()
            )));
        }
        let all_finite = self
            .a
            .iter()
            .chain(&self.beta)
            .chain([&self.x0, &self.grid.x_start, &self.grid.x_end])
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(invalid("all numeric fields must be finite"));
        }
        if self.x0 <= 0.0 {
            return Err(invalid("x0 must be positive"));
        }
        if self.grid.steps < 2 {
            return Err(invalid("grid.steps must be at least 2"));
        }
        if self.grid.x_start < self.x0 {
            return Err(invalid("grid.x_start must not lie below x0"));
        }
        if self.grid.x_end <= self.grid.x_start {
            return Err(invalid("grid.x_end must exceed grid.x_start"));
        }
        if let Some(order) = self.quadrature_order {
            if order == 0 {
                return Err(invalid("quadrature_order must be at least 1"));
            }
        }
        let ctl = match &self.series {
            None => SeriesControl::default(),
            Some(s) => {
                if s.max_terms == 0 || s.tail_tol.is_nan() || s.tail_tol <= 0.0 {
                    return Err(invalid("series control requires max_terms >= 1 and tail_tol > 0"));
                }
                SeriesControl {
                    max_terms: s.max_terms,
                    tail_tol: s.tail_tol,
                }
            }
        };

        let (order, odd) = match self.alpha {
            AlphaField::Real(a) => {
                if !(a > 0.0 && a <= 1.0) {
                    return Err(invalid("alpha must lie in (0, 1]"));
                }
                let odd = if a == 1.0 {
                    OddFraction { m: 0, n: 0, err: 0.0 }
                } else {
                    approximate(a, ODD_SNAP_EPS)
                        .map_err(|e| invalid(format!("cannot snap alpha to an odd fraction: {e}")))?
                };
                (FracOrder::Alpha(a), odd)
            }
            AlphaField::Odd { m, n } => {
                if m > n {
                    return Err(invalid("odd fraction requires m <= n"));
                }
                let odd = OddFraction { m, n, err: 0.0 };
                (FracOrder::Odd(odd), odd)
            }
        };

        Ok(LoadedProblem {
            problem: CauchyProblem::new(order, self.a, self.beta, self.x0),
            odd,
            grid: GridSpec {
                x_start: self.grid.x_start,
                x_end: self.grid.x_end,
                steps: self.grid.steps,
            },
            quadrature_order: self.quadrature_order,
            ctl,
        })
    }
}

pub fn load(path: &std::path::Path) -> Result<LoadedProblem, CliError> {
    let text = std::fs::read_to_string(path)?;
    let file: ProblemFile =
        serde_json::from_str(&text).map_err(|e| CliError::InvalidProblem(e.to_string()))?;
    file.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> serde_json::Value {
        serde_json::json!({
            "alpha": 0.6,
            "a": [1.0],
            "beta": [1.0],
            "x0": 1.0,
            "grid": {"x_start": 1.0, "x_end": 2.0, "steps": 5}
        })
    }

    fn parse(v: serde_json::Value) -> Result<LoadedProblem, CliError> {
        let file: ProblemFile = serde_json::from_value(v).map_err(|e| CliError::InvalidProblem(e.to_string()))?;
        file.validate()
    }

    #[test]
    fn minimal_file_loads_with_defaults() {
        let p = parse(base()).unwrap();
        assert_eq!(p.ctl.max_terms, 500);
        assert_eq!(p.quadrature_order, None);
        // 0.6 snaps exactly to 3/5
        assert_eq!((p.odd.m, p.odd.n), (1, 2));
    }

    #[test]
    fn odd_pair_is_used_verbatim() {
        let mut v = base();
        v["alpha"] = serde_json::json!({"m": 4, "n": 5});
        let p = parse(v).unwrap();
        assert_eq!((p.odd.m, p.odd.n), (4, 5));
        assert!((p.problem.order.alpha() - 9.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_one_maps_to_classical_pair() {
        let mut v = base();
        v["alpha"] = serde_json::json!(1.0);
        let p = parse(v).unwrap();
        assert_eq!((p.odd.m, p.odd.n), (0, 0));
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let mut v = base();
        v["beta"] = serde_json::json!([1.0, 2.0]);
        assert!(parse(v).is_err());
    }

    #[test]
    fn grid_below_x0_rejected() {
        let mut v = base();
        v["grid"]["x_start"] = serde_json::json!(0.5);
        assert!(parse(v).is_err());
    }

    #[test]
    fn unknown_fields_rejected() {
        let mut v = base();
        v["extra"] = serde_json::json!(1);
        assert!(parse(v).is_err());
    }
}
