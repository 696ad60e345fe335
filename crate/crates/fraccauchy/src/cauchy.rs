//! The fractional Cauchy problem
//!
//! D^{αp} y + a_1 D^{α(p-1)} y + ... + a_p y = 0,   x > x_0 > 0,
//! D^{αk} y(x)|_{x=x_0} = β_k,                      k = 0..p-1,
//!
//! solved in closed form: the eigen identity D^{αk} h_α(x, λ) = λ^k h_α(x, λ)
//! reduces the equation to the characteristic polynomial
//! λ^p + a_1 λ^{p-1} + ... + a_p = 0; with distinct real roots λ_1..λ_p the
//! solution is y(x) = Σ c_k h_α(x, λ_k) and the initial data fix c through
//! the moment system Σ_i c_i λ_i^k h_α(x_0, λ_i) = β_k.
//!
//! The system is solved by substituting d_i = c_i h_α(x_0, λ_i), which
//! leaves a pure Vandermonde moment problem handled with the O(p²)
//! Björck-Pereyra elimination; that is algebraically the same as the
//! Cramer-determinant form (the determinant factors into Π h_α(x_0, λ_i)
//! times the Vandermonde determinant) but numerically stable.

use crate::exp_repr::{eval_h_exp, ExpReprParams};
use crate::mittag_leffler::{eval_h_series, HParams, SeriesControl, SeriesError};
use crate::odd_fraction::{odd_root, OddFraction};
use crate::quad::QuadError;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum CauchyError {
    /// The characteristic polynomial has roots off the real axis.
    #[error("characteristic roots are complex (largest imaginary part {max_imag:e}); only real spectra are supported")]
    ComplexRoots { max_imag: f64 },
    /// Two characteristic roots coincide to working precision.
    #[error("characteristic roots are not distinct (minimal separation {separation:e})")]
    RepeatedRoots { separation: f64 },
    /// The simultaneous root iteration failed to settle.
    #[error("root iteration did not converge")]
    NoConvergence,
    /// The Vandermonde moment system is numerically singular.
    #[error("coefficient system is singular (root separation {separation:e})")]
    SingularSystem { separation: f64 },
    /// h_α(x_0, λ) vanished for some root, so c = d/h is undefined.
    #[error("basis function vanishes at x0 for root {root}")]
    ZeroBasisValue { root: f64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Fractional order given either directly or as an odd/odd rational.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FracOrder {
    Alpha(f64),
    Odd(OddFraction),
}

impl FracOrder {
    pub fn alpha(&self) -> f64 {
        match self {
            FracOrder::Alpha(a) => *a,
            FracOrder::Odd(f) => f.value(),
        }
    }
}

/// Problem data: order α, coefficients a_1..a_p, initial values β_0..β_{p-1},
/// base point x_0 > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyProblem {
    pub order: FracOrder,
    pub a: Vec<f64>,
    pub beta: Vec<f64>,
    pub x0: f64,
}

impl CauchyProblem {
    pub fn new(order: FracOrder, a: Vec<f64>, beta: Vec<f64>, x0: f64) -> Self {
        let alpha = order.alpha();
        assert!(alpha > 0.0 && alpha <= 1.0, "order must lie in (0, 1]");
        assert!(!a.is_empty(), "need at least one coefficient");
        assert_eq!(a.len(), beta.len(), "one initial value per coefficient");
        assert!(x0 > 0.0, "x0 must be positive");
        CauchyProblem { order, a, beta, x0 }
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    pub fn char_poly(&self) -> CharPoly {
        CharPoly::new(self.a.clone())
    }
}

/// Monic characteristic polynomial λ^p + a_1 λ^{p-1} + ... + a_p.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly {
    a: Vec<f64>,
}

impl CharPoly {
    pub fn new(a: Vec<f64>) -> Self {
        assert!(!a.is_empty(), "degree must be at least 1");
        CharPoly { a }
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    /// Trailing coefficients a_1..a_p.
    pub fn coefficients(&self) -> &[f64] {
        &self.a
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        for &c in &self.a {
            v = v * z + c;
        }
        v
    }

    pub fn eval_deriv(&self, z: Complex64) -> Complex64 {
        let p = self.degree();
        let mut v = Complex64::new(p as f64, 0.0);
        for (i, &c) in self.a.iter().take(p - 1).enumerate() {
            v = v * z + c * (p - 1 - i) as f64;
        }
        v
    }
}

/// Tolerances for the root stage.
#[derive(Clone, Copy, Debug)]
pub struct RootConfig {
    /// Imaginary parts above imag_tol·(1+|λ|) reject the spectrum as complex.
    pub imag_tol: f64,
    /// Roots closer than separation_tol·(1+max|λ|) count as repeated.
    pub separation_tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            imag_tol: 1e-8,
            separation_tol: 1e-8,
            max_iter: 400,
        }
    }
}

/// All p roots by Durand-Kerner simultaneous iteration from a perturbed
/// circle, polished by Newton, sorted ascending. Rejects complex and
/// repeated spectra, which the closed-form solution does not cover.
pub fn char_roots(poly: &CharPoly, imag_tol: f64) -> Result<Vec<f64>, CauchyError> {
    char_roots_with(
        poly,
        &RootConfig {
            imag_tol,
            ..RootConfig::default()
        },
    )
}

pub fn char_roots_with(poly: &CharPoly, cfg: &RootConfig) -> Result<Vec<f64>, CauchyError> {
    let p = poly.degree();
    let radius = 1.0 + poly.a.iter().fold(0.0f64, |m, c| m.max(c.abs()));

    // perturbed-circle start: radius · (0.4 + 0.9i)^k
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..p)
        .map(|k| seed.powu(k as u32) * radius)
        .collect();

    let mut converged = false;
    for _ in 0..cfg.max_iter {
        let mut max_step = 0.0f64;
        let mut max_abs = 0.0f64;
        for k in 0..p {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..p {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            let step = poly.eval(z[k]) / denom;
            z[k] -= step;
            if !z[k].re.is_finite() || !z[k].im.is_finite() {
                return Err(CauchyError::NoConvergence);
            }
            max_step = max_step.max(step.norm());
            max_abs = max_abs.max(z[k].norm());
        }
        if max_step <= 1e-14 * (1.0 + max_abs) {
            converged = true;
            break;
        }
    }

    // Newton polish
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let dv = poly.eval_deriv(*zk);
            if dv.norm() > 0.0 {
                *zk -= poly.eval(*zk) / dv;
            }
        }
    }

    let scale = 1.0 + z.iter().fold(0.0f64, |m, zk| m.max(zk.norm()));

    // Pairwise separation in the complex plane. A repeated root stalls the
    // iteration with the cluster smeared over a ~sqrt(eps) disc, so the
    // stalled case uses a correspondingly relaxed threshold; conjugate
    // pairs are far apart in the plane and do not trigger this.
    let mut min_sep = f64::INFINITY;
    for i in 0..p {
        for j in i + 1..p {
            min_sep = min_sep.min((z[i] - z[j]).norm());
        }
    }
    let cluster_tol = if converged {
        cfg.separation_tol
    } else {
        1e-6
    };
    if p > 1 && min_sep <= cluster_tol * scale {
        return Err(CauchyError::RepeatedRoots {
            separation: min_sep,
        });
    }

    let max_imag = z.iter().fold(0.0f64, |m, zk| m.max(zk.im.abs()));
    if max_imag > cfg.imag_tol * scale {
        return Err(CauchyError::ComplexRoots { max_imag });
    }

    if !converged {
        return Err(CauchyError::NoConvergence);
    }

    let mut re: Vec<f64> = z.iter().map(|zk| zk.re).collect();
    re.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    Ok(re)
}

/// Solution data: roots, mixing coefficients and the originating problem.
#[derive(Clone, Debug)]
pub struct CauchySolution {
    pub roots: Vec<f64>,
    pub c: Vec<f64>,
    pub problem: CauchyProblem,
}

/// Dual (moment-problem) Vandermonde solve: Σ_i d_i x_i^k = b_k.
/// Björck-Pereyra elimination, O(p²), exact for p = 1.
#[allow(clippy::needless_range_loop)] // index arithmetic is the algorithm
fn solve_dual_vandermonde(nodes: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut d = rhs.to_vec();
    for k in 0..n.saturating_sub(1) {
        for i in (k + 1..n).rev() {
            d[i] -= nodes[k] * d[i - 1];
        }
    }
    for k in (0..n.saturating_sub(1)).rev() {
        for i in k + 1..n {
            d[i] /= nodes[i] - nodes[i - k - 1];
        }
        for i in k..n - 1 {
            d[i] -= d[i + 1];
        }
    }
    d
}

/// Fixes the mixing coefficients from the initial data for a given set of
/// distinct real roots.
pub fn solve_coefficients(
    problem: &CauchyProblem,
    roots: &[f64],
    ctl: &SeriesControl,
) -> Result<CauchySolution, CauchyError> {
    let p = problem.degree();
    assert_eq!(roots.len(), p, "one root per equation order");

    let scale = 1.0 + roots.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let mut min_sep = f64::INFINITY;
    for i in 0..p {
        for j in i + 1..p {
            min_sep = min_sep.min((roots[i] - roots[j]).abs());
        }
    }
    if p > 1 && min_sep <= 1e-8 * scale {
        return Err(CauchyError::SingularSystem {
            separation: min_sep,
        });
    }

    let alpha = problem.order.alpha();
    let mut basis = Vec::with_capacity(p);
    for &root in roots {
        let h = eval_h_series(
            &HParams {
                alpha,
                lambda: root,
            },
            problem.x0,
            ctl,
        )?
        .value;
        if h.abs() < 1e-250 || !h.is_finite() {
            return Err(CauchyError::ZeroBasisValue { root });
        }
        basis.push(h);
    }

    let d = solve_dual_vandermonde(roots, &problem.beta);
    let c = d.iter().zip(&basis).map(|(di, hi)| di / hi).collect();

    Ok(CauchySolution {
        roots: roots.to_vec(),
        c,
        problem: problem.clone(),
    })
}

/// Full pipeline: characteristic roots, then coefficients.
pub fn solve(problem: &CauchyProblem, ctl: &SeriesControl) -> Result<CauchySolution, CauchyError> {
    let roots = char_roots_with(&problem.char_poly(), &RootConfig::default())?;
    solve_coefficients(problem, &roots, ctl)
}

impl CauchySolution {
    /// y(x) = Σ c_k h_α(x, λ_k) from the defining series.
    pub fn eval_series(&self, x: f64, ctl: &SeriesControl) -> Result<f64, CauchyError> {
        let alpha = self.problem.order.alpha();
        let mut y = 0.0;
        for (&c, &root) in self.c.iter().zip(&self.roots) {
            y += c
                * eval_h_series(
                    &HParams {
                        alpha,
                        lambda: root,
                    },
                    x,
                    ctl,
                )?
                .value;
        }
        Ok(y)
    }

    /// y(x) through the exponential representation at the odd fraction
    /// (2m+1)/(2n+1): each root enters as ρ_k = sign(λ_k)|λ_k|^{1/(2m+1)}
    /// and the basis is h_{1/(2n+1)}(x, ρ_k).
    pub fn eval_exp(
        &self,
        odd: &OddFraction,
        x: f64,
        rule_order: usize,
    ) -> Result<f64, CauchyError> {
        let mut y = 0.0;
        for (&c, &root) in self.c.iter().zip(&self.roots) {
            let rho = odd_root(root, odd.numerator());
            let params = ExpReprParams {
                n: odd.n as usize,
                rho,
            };
            y += c * eval_h_exp(&params, x, rule_order)?;
        }
        Ok(y)
    }

    /// Residuals of the initial conditions: |Σ_i c_i λ_i^k h_α(x_0, λ_i) - β_k|
    /// for k = 0..p-1, using the eigen identity instead of differentiating.
    pub fn initial_condition_residuals(
        &self,
        ctl: &SeriesControl,
    ) -> Result<Vec<f64>, CauchyError> {
        let alpha = self.problem.order.alpha();
        let p = self.roots.len();
        let mut basis = Vec::with_capacity(p);
        for &root in &self.roots {
            basis.push(
                eval_h_series(
                    &HParams {
                        alpha,
                        lambda: root,
                    },
                    self.problem.x0,
                    ctl,
                )?
                .value,
            );
        }
        let mut residuals = Vec::with_capacity(p);
        for (k, &beta_k) in self.problem.beta.iter().enumerate() {
            let acc: f64 = self
                .c
                .iter()
                .zip(&self.roots)
                .zip(&basis)
                .map(|((c, root), h)| c * root.powi(k as i32) * h)
                .sum();
            residuals.push((acc - beta_k).abs());
        }
        Ok(residuals)
    }

    /// Largest initial-condition residual.
    pub fn max_initial_residual(&self, ctl: &SeriesControl) -> Result<f64, CauchyError> {
        Ok(self
            .initial_condition_residuals(ctl)?
            .into_iter()
            .fold(0.0, f64::max))
    }
}
