//! Gauss-Jacobi quadrature on [0, 1] with weight (1-u)^γ, γ ∈ (-1, 0].
//!
//! The convolution integrals of the exponential representation all have the
//! form ∫_0^x (x-t)^γ g(t) dt with a weakly singular kernel at t = x.
//! Substituting t = x·u moves the singularity into the quadrature weight,
//! so smooth integrands g converge spectrally.
//!
//! Rules are built by the Golub-Welsch method: the three-term recurrence of
//! the monic Jacobi polynomials gives a symmetric tridiagonal matrix whose
//! eigenvalues are the nodes; squared first eigenvector components give the
//! weights. Built rules are cached per (γ, order).

use crate::gamma::recip_fact;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum QuadError {
    #[error("tridiagonal eigensolve failed to converge for order {order}")]
    Convergence { order: usize },
}

/// Nodes and weights for ∫_0^1 (1-u)^γ f(u) du ≈ Σ w_i f(u_i).
///
/// Exact for polynomials f of degree ≤ 2·order - 1. All nodes lie strictly
/// inside (0, 1), all weights are positive, and Σ w_i = 1/(γ+1).
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    gamma_exp: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn gamma_exp(&self) -> f64 {
        self.gamma_exp
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// ∫_0^x (x-t)^γ g(t) dt / Γ(γ+1) via the substitution t = x·u.
    pub fn integrate_singular<F: Fn(f64) -> f64>(&self, x: f64, g: F) -> f64 {
        assert!(x > 0.0, "integration endpoint must be positive");
        let mut s = 0.0;
        for (u, w) in self.nodes.iter().zip(&self.weights) {
            s += w * g(x * u);
        }
        s * x.powf(self.gamma_exp + 1.0) * recip_fact(self.gamma_exp)
    }
}

/// Symmetric tridiagonal QL with implicit shifts, accumulating only the
/// first row of the eigenvector matrix. `d` holds the diagonal, `e` the
/// subdiagonal in e[0..n-1] (e[n-1] is workspace), `z` starts as e_0.
fn tridiag_eigen_first_row(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<(), QuadError> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let scale = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * scale {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(QuadError::Convergence { order: n });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0;
            let mut underflowed = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflowed {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Builds the rule for weight (1-u)^γ on [0, 1].
pub fn build_rule(gamma_exp: f64, order: usize) -> Result<QuadratureRule, QuadError> {
    assert!(
        gamma_exp > -1.0 && gamma_exp <= 0.0,
        "singularity exponent must lie in (-1, 0]"
    );
    assert!(order >= 1, "order must be at least 1");
    let a = gamma_exp;
    let n = order;

    // Monic Jacobi(a, 0) recurrence on [-1, 1]:
    //   p_{k+1} = (t - alpha_k) p_k - beta_k p_{k-1}
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    d[0] = -a / (a + 2.0);
    for (k, dk) in d.iter_mut().enumerate().skip(1) {
        let k = k as f64;
        *dk = -(a * a) / ((2.0 * k + a) * (2.0 * k + a + 2.0));
    }
    for k in 1..n {
        let kf = k as f64;
        let num = 4.0 * kf * kf * (kf + a) * (kf + a);
        let den = (2.0 * kf + a) * (2.0 * kf + a) * (2.0 * kf + a + 1.0) * (2.0 * kf + a - 1.0);
        e[k - 1] = (num / den).sqrt();
    }

    let mut z = vec![0.0; n];
    z[0] = 1.0;
    tridiag_eigen_first_row(&mut d, &mut e, &mut z)?;

    // Map nodes from [-1, 1] to [0, 1]. The total mass 2^{a+1}/(a+1) of the
    // [-1, 1] weight times the scale factor 2^{-(a+1)} leaves w_i = z_i^2/(a+1).
    let mut pairs: Vec<(f64, f64)> = d
        .iter()
        .zip(&z)
        .map(|(&t, &zi)| ((1.0 + t) / 2.0, zi * zi / (a + 1.0)))
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("nodes are finite"));

    Ok(QuadratureRule {
        gamma_exp,
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

type RuleCache = Mutex<HashMap<(u64, usize), Arc<QuadratureRule>>>;

/// Shared, lazily built rules; the representation reuses the same γ across
/// a whole x grid, so rebuilding per evaluation would dominate the cost.
pub fn cached_rule(gamma_exp: f64, order: usize) -> Result<Arc<QuadratureRule>, QuadError> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (gamma_exp.to_bits(), order);
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build_rule(gamma_exp, order)?);
    Ok(cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(rule)
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;

    fn beta_fn(p: f64, q: f64) -> f64 {
        gamma(p).unwrap() * gamma(q).unwrap() / gamma(p + q).unwrap()
    }

    #[test]
    fn legendre_two_point_rule() {
        let rule = build_rule(0.0, 2).unwrap();
        let s3 = 3f64.sqrt();
        assert!((rule.nodes()[0] - (3.0 - s3) / 6.0).abs() < 1e-15);
        assert!((rule.nodes()[1] - (3.0 + s3) / 6.0).abs() < 1e-15);
        assert!((rule.weights()[0] - 0.5).abs() < 1e-15);
        assert!((rule.weights()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_node_carries_total_mass() {
        let rule = build_rule(-0.5, 1).unwrap();
        assert_eq!(rule.order(), 1);
        assert!((rule.weights()[0] - 2.0).abs() < 1e-14);
        // first moment: ∫_0^1 (1-u)^{-1/2} u du = B(2, 1/2) = 4/3
        assert!((rule.weights()[0] * rule.nodes()[0] - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn moments_match_beta_closed_form() {
        for &g in &[0.0, -0.25, -1.0 / 3.0, -0.5, -2.0 / 3.0, -0.8, -0.9] {
            for &n in &[1usize, 2, 4, 8, 16, 32, 64] {
                let rule = build_rule(g, n).unwrap();
                for j in 0..2 * n {
                    let approx: f64 = rule
                        .nodes()
                        .iter()
                        .zip(rule.weights())
                        .map(|(&u, &w)| w * u.powi(j as i32))
                        .sum();
                    let exact = beta_fn(j as f64 + 1.0, g + 1.0);
                    assert!(
                        (approx - exact).abs() <= 1e-12 * exact,
                        "gamma={g} n={n} j={j}: {approx} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn high_moment_against_beta_oracle() {
        // ∫_0^1 (1-u)^{-2/3} u^10 du = B(11, 1/3); frozen 1.216856742578304547744276
        let rule = build_rule(-2.0 / 3.0, 16).unwrap();
        let approx: f64 = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&u, &w)| w * u.powi(10))
            .sum();
        assert!((approx - 1.2168567425783046).abs() < 1e-14);
    }

    #[test]
    fn weights_positive_nodes_interior_across_gamma_grid() {
        for i in 0..50 {
            let g = -0.98 + 0.98 * i as f64 / 49.0;
            let rule = build_rule(g, 24).unwrap();
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 1.0 / (g + 1.0)).abs() <= 1e-12 * total);
            for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
                assert!(u > 0.0 && u < 1.0, "gamma={g} node={u}");
                assert!(w > 0.0, "gamma={g} weight={w}");
            }
        }
    }

    #[test]
    fn plain_exponential_integral() {
        // γ = 0, g = e^t, x = 1: ∫_0^1 e^t dt = e - 1
        let rule = build_rule(0.0, 12).unwrap();
        let v = rule.integrate_singular(1.0, f64::exp);
        assert!((v - 1.718281828459045).abs() < 1e-14);
    }

    #[test]
    fn constant_integrand_closed_form() {
        // g ≡ 1: ∫_0^x (x-t)^γ dt / Γ(γ+1) = x^{γ+1}/Γ(γ+2)
        for &g in &[-0.2, -0.5, -0.75] {
            let rule = build_rule(g, 8).unwrap();
            for &x in &[0.3, 1.0, 2.5] {
                let v = rule.integrate_singular(x, |_| 1.0);
                let exact = x.powf(g + 1.0) / gamma(g + 2.0).unwrap();
                assert!((v - exact).abs() <= 1e-13 * exact);
            }
        }
    }

    #[test]
    fn singular_exponential_matches_refinement_oracle() {
        // oracle: double the order until two successive values agree to 1e-12,
        // then freeze that value as the reference
        let x = 1.0;
        let g = -2.0 / 3.0;
        let mut prev = build_rule(g, 8).unwrap().integrate_singular(x, f64::exp);
        let mut n = 16;
        let oracle = loop {
            let cur = build_rule(g, n).unwrap().integrate_singular(x, f64::exp);
            if (cur - prev).abs() <= 1e-12 * cur.abs() {
                break cur;
            }
            prev = cur;
            n *= 2;
            assert!(n <= 1024, "refinement oracle failed to settle");
        };
        let v = build_rule(g, 32).unwrap().integrate_singular(x, f64::exp);
        assert!((v - oracle).abs() <= 1e-12 * oracle);
        // frozen 60-digit reference for the same integral: 2.458111237995104845736441
        assert!((v - 2.4581112379951047).abs() < 1e-13);
    }

    #[test]
    fn substitution_cross_check() {
        // independent route: substitute v = (x-t)^{γ+1} to remove the
        // singularity, then integrate the smooth integrand with the γ = 0 rule
        let g = -0.6;
        let x = 1.7;
        let mu = -0.8;
        let rule = build_rule(g, 48).unwrap();
        let direct = rule.integrate_singular(x, |t| (mu * t).exp());

        let vmax = x.powf(g + 1.0);
        let legendre = build_rule(0.0, 192).unwrap();
        // ∫_0^{vmax} g(x - v^{1/(γ+1)}) dv / (γ+1), rescaled to [0,1]
        let sub: f64 = legendre
            .nodes()
            .iter()
            .zip(legendre.weights())
            .map(|(&u, &w)| {
                let v = vmax * u;
                w * (mu * (x - v.powf(1.0 / (g + 1.0)))).exp()
            })
            .sum::<f64>()
            * vmax
            / (g + 1.0)
            / gamma(g + 1.0).unwrap();
        assert!(
            (direct - sub).abs() <= 1e-8 * direct.abs(),
            "direct={direct} substitution={sub}"
        );
    }

    #[test]
    fn refinement_differences_shrink_for_analytic_integrands() {
        let g = -0.5;
        let x = 3.0;
        let f = |t: f64| (0.7 * t).exp();
        let mut last_gap = f64::INFINITY;
        let mut n = 8;
        while n <= 64 {
            let a = build_rule(g, n).unwrap().integrate_singular(x, f);
            let b = build_rule(g, 2 * n).unwrap().integrate_singular(x, f);
            let gap = (a - b).abs();
            // once converged the gaps sit on the roundoff floor of the value
            let floor = 1e-14 * a.abs();
            assert!(
                gap <= last_gap.max(floor),
                "n={n} gap={gap} last={last_gap}"
            );
            last_gap = gap.max(floor);
            n *= 2;
        }
    }

    #[test]
    fn cache_returns_shared_rule() {
        let a = cached_rule(-1.0 / 3.0, 24).unwrap();
        let b = cached_rule(-1.0 / 3.0, 24).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let c = cached_rule(-1.0 / 3.0, 32).unwrap();
        assert!(!Arc::ptr_eq(&a, &c));
    }
}
