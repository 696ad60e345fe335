//! Series evaluation of the Mittag-Leffler functions and of the
//! fractional exponential eigenfunction.
//!
//! `E_α(z) = Σ_{k≥0} z^k / Γ(αk+1)`, `E_{α,β}(z) = Σ_{k≥0} z^k / Γ(αk+β)`,
//! and `h_α(x, λ) = Σ_{k≥1} λ^{k-1} x^{kα-1} / Γ(kα)`, which satisfies
//! `D^α h_α = λ h_α` for x > 0 under the Riemann-Liouville power rule.
//!
//! All sums run over double-double accumulators: for negative eigenvalues
//! the terms cancel by many orders of magnitude (the peak term can exceed
//! the sum by 1e9), and a plain f64 reduction would lose the tail these
//! functions decay into.

use crate::dd::Dd;
use crate::gamma::{gamma_dd_arg, ln_gamma, recip_fact};
use thiserror::Error;

/// Truncation policy for the infinite series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesControl {
    /// Hard cap on the number of terms summed.
    pub max_terms: usize,
    /// Absolute magnitude below which the first omitted term may fall.
    pub tail_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: 500,
            tail_tol: 1e-15,
        }
    }
}

impl SeriesControl {
    fn validate(&self) {
        assert!(self.max_terms >= 1, "max_terms must be at least 1");
        assert!(self.tail_tol > 0.0, "tail_tol must be positive");
    }
}

/// A converged partial sum. `terms` counts the terms actually added; the
/// first term beyond them was already below the tail tolerance.
#[derive(Clone, Copy, Debug)]
pub struct SeriesEval {
    pub value: f64,
    pub terms: usize,
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum SeriesError {
    #[error("series did not converge: after {terms} terms the last term is still {last_term:e}")]
    NonConvergence { terms: usize, last_term: f64 },
}

/// Parameters of one eigenfunction h_α(·, λ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HParams {
    /// Fractional order, 0 < α ≤ 1.
    pub alpha: f64,
    /// Eigenvalue; may be negative.
    pub lambda: f64,
}

impl HParams {
    fn validate(&self) {
        assert!(
            self.alpha > 0.0 && self.alpha <= 1.0,
            "alpha must lie in (0, 1]"
        );
    }
}

// Γ arguments beyond this are routed through ln_gamma; the direct ladder
// would overflow.
const GAMMA_DIRECT_MAX: f64 = 171.5;

/// One series term `pow / Γ(arg)` where `pow` is the running power and the
/// Γ argument is carried as an exact double-double product. Falls back to
/// log space when Γ(arg) is not representable.
fn term_over_gamma(pow: Dd, ln_abs_pow: f64, sign: f64, arg: Dd) -> Dd {
    if arg.hi <= GAMMA_DIRECT_MAX && pow.hi.is_finite() {
        pow.div(gamma_dd_arg(arg))
    } else {
        Dd::from_f64(sign * (ln_abs_pow - ln_gamma(arg.hi)).exp())
    }
}

/// Two-parameter Mittag-Leffler function E_{α,β}(z).
pub fn eval_e2(alpha: f64, beta: f64, z: f64, ctl: &SeriesControl) -> Result<SeriesEval, SeriesError> {
    assert!(alpha > 0.0, "alpha must be positive");
    assert!(beta > 0.0, "beta must be positive");
    ctl.validate();
    let mut sum = Dd::ZERO;
    let mut zpow = Dd::ONE;
    let ln_abs_z = z.abs().ln();
    for k in 0..=ctl.max_terms {
        let arg = Dd::from_product(alpha, k as f64).add(Dd::from_f64(beta));
        let ln_abs_pow = if k == 0 { 0.0 } else { k as f64 * ln_abs_z };
        let sign = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        let term = term_over_gamma(zpow, ln_abs_pow, sign, arg);
        let mag = term.to_f64().abs();
        if mag < ctl.tail_tol {
            return Ok(SeriesEval {
                value: sum.to_f64(),
                terms: k,
            });
        }
        if k == ctl.max_terms {
            return Err(SeriesError::NonConvergence {
                terms: k,
                last_term: mag,
            });
        }
        sum = sum.add(term);
        zpow = zpow.mul_f64(z);
    }
    unreachable!("loop always returns");
}

/// One-parameter Mittag-Leffler function E_α(z) = E_{α,1}(z).
pub fn eval_e(alpha: f64, z: f64, ctl: &SeriesControl) -> Result<SeriesEval, SeriesError> {
    eval_e2(alpha, 1.0, z, ctl)
}

/// Fixed-length partial sum of E_{α,β}(z): exactly `terms` terms, no
/// tolerance logic. Used for truncation-monotonicity checks.
pub fn e2_series_partial(alpha: f64, beta: f64, z: f64, terms: usize) -> f64 {
    assert!(alpha > 0.0 && beta > 0.0);
    let mut sum = Dd::ZERO;
    let mut zpow = Dd::ONE;
    let ln_abs_z = z.abs().ln();
    for k in 0..terms {
        let arg = Dd::from_product(alpha, k as f64).add(Dd::from_f64(beta));
        let ln_abs_pow = if k == 0 { 0.0 } else { k as f64 * ln_abs_z };
        let sign = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        sum = sum.add(term_over_gamma(zpow, ln_abs_pow, sign, arg));
        zpow = zpow.mul_f64(z);
    }
    sum.to_f64()
}

/// Shared state for walking the h series: term k is
/// x^{α-1} q^{k-1} / Γ(kα) with q = λ x^α.
struct HSeries {
    prefactor: f64,
    q: f64,
    ln_abs_q: f64,
    alpha: f64,
    qpow: Dd,
}

impl HSeries {
    fn new(p: &HParams, x: f64) -> Self {
        p.validate();
        assert!(x > 0.0, "h series requires x > 0");
        let q = p.lambda * x.powf(p.alpha);
        HSeries {
            prefactor: x.powf(p.alpha - 1.0),
            q,
            ln_abs_q: q.abs().ln(),
            alpha: p.alpha,
            qpow: Dd::ONE,
        }
    }

    /// Unscaled term for index k (1-based); advances the power ladder.
    fn next_term(&mut self, k: usize) -> Dd {
        let arg = Dd::from_product(self.alpha, k as f64);
        let ln_abs_pow = if k == 1 {
            0.0
        } else {
            (k - 1) as f64 * self.ln_abs_q
        };
        let sign = if self.q < 0.0 && (k - 1) % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        let term = term_over_gamma(self.qpow, ln_abs_pow, sign, arg);
        self.qpow = self.qpow.mul_f64(self.q);
        term
    }
}

/// Eigenfunction series h_α(x, λ) for x > 0.
///
/// The leading term x^{α-1}/Γ(α) diverges as x → 0⁺ when α < 1; that is
/// the correct behaviour of the function, not an error.
pub fn eval_h_series(p: &HParams, x: f64, ctl: &SeriesControl) -> Result<SeriesEval, SeriesError> {
    ctl.validate();
    let mut series = HSeries::new(p, x);
    let mut sum = Dd::ZERO;
    for k in 1..=ctl.max_terms + 1 {
        let term = series.next_term(k);
        let mag = (term.to_f64() * series.prefactor).abs();
        if mag < ctl.tail_tol {
            return Ok(SeriesEval {
                value: sum.mul_f64(series.prefactor).to_f64(),
                terms: k - 1,
            });
        }
        if k == ctl.max_terms + 1 {
            return Err(SeriesError::NonConvergence {
                terms: k - 1,
                last_term: mag,
            });
        }
        sum = sum.add(term);
    }
    unreachable!("loop always returns");
}

/// Fixed-length partial sum of h_α(x, λ): exactly `terms` terms.
pub fn h_series_partial(p: &HParams, x: f64, terms: usize) -> f64 {
    let mut series = HSeries::new(p, x);
    let mut sum = Dd::ZERO;
    for k in 1..=terms {
        let term = series.next_term(k);
        sum = sum.add(term);
    }
    sum.mul_f64(series.prefactor).to_f64()
}

/// Term-wise Riemann-Liouville derivative of order α of the K-term
/// truncation of h_α(x, λ).
///
/// Each term x^{kα-1}/Γ(kα) maps to x^{(k-1)α-1}/Γ((k-1)α) under the power
/// rule; the k = 1 term lands on exponent -1 where `recip_fact` is zero,
/// which is the delta term dropped for x > 0. The result equals λ times the
/// (K-1)-term truncation of the series itself.
pub fn frac_deriv_h_truncated(p: &HParams, x: f64, k_terms: usize) -> f64 {
    p.validate();
    assert!(x > 0.0, "requires x > 0");
    assert!(k_terms >= 2, "need at least two terms");
    // x^{(k-1)α-1} is formed as (x^α)^{k-1} / x on a power ladder, so each
    // shifted term shares its rounding with the corresponding series term
    // instead of carrying independent powf noise into the cancellation.
    let q = p.lambda * x.powf(p.alpha);
    let inv_x = 1.0 / x;
    let mut sum = Dd::ZERO;
    let mut qpow = Dd::ONE; // q^{k-1}
    for k in 1..=k_terms {
        // Γ argument of the shifted term, kept as an exact product
        let arg = Dd::from_product((k - 1) as f64, p.alpha);
        let e = arg.to_f64() - 1.0;
        // recip_fact gates the delta convention: the k = 1 term lands on
        // exponent -1 and is dropped there.
        let rf = recip_fact(e);
        if rf != 0.0 {
            let term = if arg.hi <= GAMMA_DIRECT_MAX && qpow.hi.is_finite() {
                qpow.mul_f64(inv_x).div(gamma_dd_arg(arg))
            } else {
                Dd::from_f64(p.lambda.signum().powi(k as i32 - 1) * x.powf(e) * rf)
                    .mul_f64(p.lambda.abs().powi(k as i32 - 1))
            };
            sum = sum.add(term);
        }
        qpow = qpow.mul_f64(q);
    }
    sum.to_f64()
}
