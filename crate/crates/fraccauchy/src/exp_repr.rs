//! Exponential-integral representation of the eigenfunction
//! h_{1/(2n+1)}(x, ρ).
//!
//! Splitting the series by residue classes of the term index modulo 2n+1
//! turns each class into a fractional integral of an ordinary exponential:
//!
//! h_{1/(2n+1)}(x, ρ) = Σ_{s=0}^{2n-1} ρ^s D_s(x) + ρ^{2n} e^{ρ^{2n+1} x},
//!
//! where D_s(x) = d/dx ∫_0^x (x-t)^{γ_s}/Γ(γ_s+1) · e^{ρ^{2n+1} t} dt and
//! γ_s = (s-2n)/(2n+1) ∈ (-1, 0). The derivative is taken in closed form
//! (never numerically): integrating by parts gives
//! D_s(x) = x^{γ_s}/Γ(γ_s+1) + ρ^{2n+1} ∫_0^x (x-t)^{γ_s}/Γ(γ_s+1) e^{ρ^{2n+1} t} dt.
//!
//! The s = 2n class has integer exponents only and telescopes exactly to
//! ρ^{2n} e^{ρ^{2n+1} x}, so no quadrature is spent on it. The integration
//! constants that a fractional antiderivative could carry are pinned to
//! zero by matching the series term-by-term.

use crate::dd::Dd;
use crate::gamma::{gamma_dd_arg, recip_fact};
use crate::mittag_leffler::{h_series_partial, HParams};
use crate::odd_fraction::odd_root;
use crate::quad::{cached_rule, QuadError};

/// Base order 1/(2n+1) and series ratio ρ. For an eigenvalue λ under the
/// odd fraction (2m+1)/(2n+1), use ρ = sign(λ)·|λ|^{1/(2m+1)}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpReprParams {
    pub n: usize,
    pub rho: f64,
}

/// d/dx of the s-th convolution term, in the closed integration-by-parts
/// form. Defined for 0 ≤ s ≤ 2n-1 (so only for n ≥ 1).
pub fn conv_deriv_term(
    p: &ExpReprParams,
    s: usize,
    x: f64,
    rule_order: usize,
) -> Result<f64, QuadError> {
    assert!(p.n >= 1, "derivative terms exist only for n >= 1");
    assert!(s < 2 * p.n, "s must lie in [0, 2n-1]");
    assert!(x > 0.0, "requires x > 0");
    let width = (2 * p.n + 1) as f64;
    let gamma_exp = (s as f64 - 2.0 * p.n as f64) / width;
    let mu = p.rho.powi(2 * p.n as i32 + 1);
    let singular_part = x.powf(gamma_exp) * recip_fact(gamma_exp);
    if mu == 0.0 {
        return Ok(singular_part);
    }
    let rule = cached_rule(gamma_exp, rule_order)?;
    Ok(singular_part + mu * rule.integrate_singular(x, |t| (mu * t).exp()))
}

/// h_{1/(2n+1)}(x, ρ) through the exponential representation.
pub fn eval_h_exp(p: &ExpReprParams, x: f64, rule_order: usize) -> Result<f64, QuadError> {
    assert!(x > 0.0, "requires x > 0");
    let mu = p.rho.powi(2 * p.n as i32 + 1);
    let mut total = p.rho.powi(2 * p.n as i32) * (mu * x).exp();
    let mut rho_pow = 1.0;
    for s in 0..2 * p.n {
        total += rho_pow * conv_deriv_term(p, s, x, rule_order)?;
        rho_pow *= p.rho;
    }
    Ok(total)
}

/// Partial sum of the residue-class subseries J_s: the terms of
/// h_{1/(2n+1)}(x, ρ) whose index is congruent to s+1 modulo 2n+1.
///
/// Summing J_0 + ... + J_{2n} over matching truncations reproduces the
/// direct series exactly; this is the reindexing the representation is
/// built from.
pub fn residue_subsum(n: usize, rho: f64, s: usize, x: f64, terms: usize) -> f64 {
    assert!(s <= 2 * n, "s must lie in [0, 2n]");
    assert!(x > 0.0, "requires x > 0");
    let width = (2 * n + 1) as f64;
    let c = (s as f64 + 1.0) / width;
    let mu = rho.powi(2 * n as i32 + 1);
    let mut coef = Dd::from_f64(rho.powi(s as i32));
    let mut xpow = Dd::from_f64(x.powf(c - 1.0));
    let mut sum = Dd::ZERO;
    for j in 0..terms {
        let arg = Dd::from_f64(c).add(Dd::from_f64(j as f64));
        sum = sum.add(coef.mul(xpow).div(gamma_dd_arg(arg)));
        coef = coef.mul_f64(mu);
        xpow = xpow.mul_f64(x);
    }
    sum.to_f64()
}

/// Both sides of the eigen identity
/// D^{(2m+1)/(2n+1)} h_{1/(2n+1)}(x, λ^{1/(2m+1)}) = λ h_{1/(2n+1)}(x, λ^{1/(2m+1)}),
/// with the derivative applied term-wise through the power rule.
#[derive(Clone, Copy, Debug)]
pub struct EigenIdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub discrepancy: f64,
}

/// Term-wise check of the eigen identity on a K-term truncation.
///
/// The derivative of order (2m+1)/(2n+1) is the composition of 2m+1 steps
/// of order 1/(2n+1). Series term k reaches exponent -1 exactly at step k,
/// where the power rule produces x^{-1}·recip_fact(-1) = 0 (the delta term,
/// dropped for x > 0); it contributes nothing afterwards. Hence the first
/// 2m+1 terms vanish and the remainder reproduces λ times the series
/// truncated to K-(2m+1) terms.
pub fn verify_eigen_identity(
    m: u64,
    n: u64,
    lambda: f64,
    x: f64,
    k_terms: usize,
) -> EigenIdentityCheck {
    assert!(m <= n, "requires m <= n");
    assert!(x > 0.0, "requires x > 0");
    let steps = (2 * m + 1) as usize;
    assert!(k_terms > steps, "need more terms than derivative steps");
    let width = (2 * n + 1) as f64;
    let rho = odd_root(lambda, 2 * m + 1);

    let mut lhs = Dd::ZERO;
    let mut rho_pow = Dd::ONE; // ρ^{k-1}
    for k in 1..=k_terms {
        if k > steps {
            let e = (k - steps) as f64 / width - 1.0;
            lhs = lhs.add(rho_pow.mul_f64(x.powf(e) * recip_fact(e)));
        }
        rho_pow = rho_pow.mul_f64(rho);
    }

    let mut rhs = Dd::ZERO;
    let mut rho_pow = Dd::ONE;
    for j in 1..=k_terms - steps {
        let e = j as f64 / width - 1.0;
        rhs = rhs.add(rho_pow.mul_f64(x.powf(e) * recip_fact(e)));
        rho_pow = rho_pow.mul_f64(rho);
    }
    let rhs = rhs.mul_f64(lambda);

    EigenIdentityCheck {
        lhs: lhs.to_f64(),
        rhs: rhs.to_f64(),
        discrepancy: lhs.sub(rhs).abs().to_f64(),
    }
}

/// Series-route twin of [`eval_h_exp`] for cross-checks: same function,
/// evaluated from the defining series at order α = 1/(2n+1).
pub fn eval_h_series_base(n: usize, rho: f64, x: f64, terms: usize) -> f64 {
    let p = HParams {
        alpha: 1.0 / (2.0 * n as f64 + 1.0),
        lambda: rho,
    };
    h_series_partial(&p, x, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mittag_leffler::{eval_h_series, SeriesControl};
    use crate::quad::build_rule;

    const ORDER: usize = 64;

    #[test]
    fn n_zero_is_plain_exponential() {
        let p = ExpReprParams { n: 0, rho: -1.0 };
        let v = eval_h_exp(&p, 1.0, ORDER).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn zero_ratio_keeps_only_singular_term() {
        // ρ = 0, n = 1, x = 1: h = x^{-2/3}/Γ(1/3) = 0.3732821739073952283
        let p = ExpReprParams { n: 1, rho: 0.0 };
        let v = eval_h_exp(&p, 1.0, ORDER).unwrap();
        assert!((v - 0.3732821739073952).abs() < 1e-14);
    }

    #[test]
    fn representation_matches_series_spot_check() {
        let p = ExpReprParams { n: 1, rho: 1.0 };
        let v = eval_h_exp(&p, 0.5, ORDER).unwrap();
        let s = eval_h_series(
            &HParams {
                alpha: 1.0 / 3.0,
                lambda: 1.0,
            },
            0.5,
            &SeriesControl::default(),
        )
        .unwrap()
        .value;
        assert!((v - s).abs() <= 1e-8 * s.abs().max(1.0), "v={v} s={s}");
    }

    #[test]
    fn representation_equivalence_grid() {
        for n in [1usize, 2] {
            for rho in [-1.5, -1.0, -0.5, 0.5, 1.0] {
                for x in [0.25, 0.5, 1.0, 2.0] {
                    let p = ExpReprParams { n, rho };
                    let v = eval_h_exp(&p, x, ORDER).unwrap();
                    let s = eval_h_series(
                        &HParams {
                            alpha: 1.0 / (2.0 * n as f64 + 1.0),
                            lambda: rho,
                        },
                        x,
                        &SeriesControl::default(),
                    )
                    .unwrap()
                    .value;
                    assert!(
                        (v - s).abs() <= 1e-6 * s.abs().max(1.0),
                        "n={n} rho={rho} x={x}: exp={v} series={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn derivative_term_with_zero_ratio() {
        // ρ = 0, n = 1, s = 1 (γ = -1/3), x = 1 → 1/Γ(2/3) = 0.7384881116216483
        let p = ExpReprParams { n: 1, rho: 0.0 };
        let v = conv_deriv_term(&p, 1, 1.0, ORDER).unwrap();
        assert!((v - 0.7384881116216483).abs() < 1e-14);
    }

    #[test]
    fn derivative_term_matches_central_difference() {
        // oracle: central difference of the directly quadratured convolution
        for (n, s, rho, x) in [(1usize, 0usize, 1.0, 1.0), (2, 3, -1.0, 2.0)] {
            let p = ExpReprParams { n, rho };
            let width = (2 * n + 1) as f64;
            let g = (s as f64 - 2.0 * n as f64) / width;
            let mu = rho.powi(2 * n as i32 + 1);
            let rule = build_rule(g, 96).unwrap();
            let conv = |y: f64| rule.integrate_singular(y, |t| (mu * t).exp());
            let h = 1e-5;
            let oracle = (conv(x + h) - conv(x - h)) / (2.0 * h);
            let v = conv_deriv_term(&p, s, x, ORDER).unwrap();
            assert!(
                (v - oracle).abs() <= 1e-6 * oracle.abs().max(1.0),
                "n={n} s={s}: analytic={v} difference={oracle}"
            );
        }
    }

    #[test]
    fn residue_classes_rebuild_the_series() {
        for n in [1usize, 2] {
            for rho in [-1.0, 0.7] {
                for x in [0.5, 2.0] {
                    let per_class = 50;
                    let mut split = 0.0;
                    for s in 0..=2 * n {
                        split += residue_subsum(n, rho, s, x, per_class);
                    }
                    let direct = eval_h_series_base(n, rho, x, (2 * n + 1) * per_class);
                    assert!(
                        (split - direct).abs() <= 1e-12 * direct.abs().max(1.0),
                        "n={n} rho={rho} x={x}: split={split} direct={direct}"
                    );
                }
            }
        }
    }

    #[test]
    fn eigen_identity_reduces_to_classical_derivative() {
        // m = n = 0: D h_1(x, λ) = λ h_1(x, λ)
        let chk = verify_eigen_identity(0, 0, -1.0, 1.0, 60);
        assert!(chk.discrepancy <= 1e-12 * chk.rhs.abs().max(1.0));
    }

    #[test]
    fn eigen_identity_with_zero_eigenvalue() {
        let chk = verify_eigen_identity(1, 2, 0.0, 1.0, 30);
        assert_eq!(chk.lhs, 0.0);
        assert_eq!(chk.rhs, 0.0);
    }

    #[test]
    fn eigen_identity_on_odd_fraction_grid() {
        // α = 3/5 case from the derivation, then the m < n ≤ 2 sweep
        let chk = verify_eigen_identity(1, 2, -2.0, 1.5, 60);
        assert!(chk.discrepancy <= 1e-10, "disc={}", chk.discrepancy);
        for (m, n) in [(0u64, 1u64), (0, 2), (1, 2)] {
            for lambda in [-2.0, -1.0, 1.0] {
                for x in [0.5, 1.0, 2.0] {
                    let chk = verify_eigen_identity(m, n, lambda, x, 80);
                    assert!(
                        chk.discrepancy <= 1e-8,
                        "m={m} n={n} lambda={lambda} x={x} disc={}",
                        chk.discrepancy
                    );
                }
            }
        }
    }

    #[test]
    fn decay_toward_zero_for_negative_ratio() {
        // For ρ < 0 the function tends to zero, but only algebraically
        // (the x^{γ_s} terms dominate the tail), so the contraction over
        // [1, 20] is a factor ~20-35, not an exponential one.
        // 60-digit references: ratio = 0.0291 (ρ=-1.5), 0.0350 (ρ=-1), 0.0508 (ρ=-0.5).
        for (rho, expected) in [(-1.5, 0.029088), (-1.0, 0.034973), (-0.5, 0.050762)] {
            let p = ExpReprParams { n: 1, rho };
            let v1 = eval_h_exp(&p, 1.0, ORDER).unwrap();
            let v20 = eval_h_exp(&p, 20.0, ORDER).unwrap();
            let ratio = (v20 / v1).abs();
            assert!(
                (ratio - expected).abs() <= 1e-3 * expected,
                "rho={rho} ratio={ratio} expected={expected}"
            );
            // strictly decreasing along the scan
            let mut last = v1.abs();
            for i in 2..=20 {
                let v = eval_h_exp(&p, i as f64, ORDER).unwrap().abs();
                assert!(v < last, "rho={rho} x={i}");
                last = v;
            }
        }
    }
}
