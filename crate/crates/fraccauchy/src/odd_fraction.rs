//! Approximation of a fractional order α ∈ (0,1) by odd/odd rationals
//! (2m+1)/(2n+1).
//!
//! Odd numerator and denominator keep the real odd root of a negative
//! eigenvalue real, which is what lets the exponential representation and
//! the Cauchy solver stay in real arithmetic for negative spectra.

use thiserror::Error;

/// The pair (m, n) with α ≈ (2m+1)/(2n+1), together with the achieved
/// absolute error for the α it was built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OddFraction {
    pub m: u64,
    pub n: u64,
    /// |α - (2m+1)/(2n+1)| recomputed in double precision.
    pub err: f64,
}

impl OddFraction {
    /// Certificate constructor: pins (m, n) and records the error against
    /// the given α. Requires m ≤ n so the value stays in (0, 1].
    pub fn for_alpha(alpha: f64, m: u64, n: u64) -> Self {
        assert!(m <= n, "odd fraction requires m <= n");
        let mut f = OddFraction { m, n, err: 0.0 };
        f.err = (alpha - f.value()).abs();
        f
    }

    /// (2m+1)/(2n+1) as a double.
    pub fn value(&self) -> f64 {
        (2 * self.m + 1) as f64 / (2 * self.n + 1) as f64
    }

    pub fn numerator(&self) -> u64 {
        2 * self.m + 1
    }

    pub fn denominator(&self) -> u64 {
        2 * self.n + 1
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum ApproxError {
    /// No denominator up to the cap achieved the requested error.
    #[error("no odd fraction within {eps:e} of alpha found for n <= {cap}")]
    SearchExhausted { eps: f64, cap: u64 },
}

/// Default cap on the denominator index n during the search.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

/// Best numerator index for a fixed n: minimizes |α - (2m+1)/(2n+1)| over
/// 0 ≤ m ≤ n. The unconstrained minimum is (α(2n+1) - 1)/2; both floor and
/// ceiling are tried so half-way ties cannot pick the wrong side.
fn best_m(alpha: f64, n: u64) -> (u64, f64) {
    let d = (2 * n + 1) as f64;
    let raw = (alpha * d - 1.0) / 2.0;
    let lo = raw.floor().max(0.0).min(n as f64) as u64;
    let hi = raw.ceil().max(0.0).min(n as f64) as u64;
    let err_of = |m: u64| (alpha - (2 * m + 1) as f64 / d).abs();
    let (el, eh) = (err_of(lo), err_of(hi));
    if el <= eh {
        (lo, el)
    } else {
        (hi, eh)
    }
}

/// Minimal-n search: returns the odd fraction with the smallest n such
/// that |α - (2m+1)/(2n+1)| < eps, with m chosen optimally for that n.
pub fn approximate(alpha: f64, eps: f64) -> Result<OddFraction, ApproxError> {
    approximate_capped(alpha, eps, DEFAULT_SEARCH_CAP)
}

/// Same as [`approximate`] with an explicit cap on n.
pub fn approximate_capped(alpha: f64, eps: f64, cap: u64) -> Result<OddFraction, ApproxError> {
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    assert!(eps > 0.0, "eps must be positive");
    for n in 0..=cap {
        let (m, err) = best_m(alpha, n);
        if err < eps {
            return Ok(OddFraction { m, n, err });
        }
    }
    Err(ApproxError::SearchExhausted { eps, cap })
}

/// Sign-preserving odd root: x^(1/index) for odd index, real for all x.
pub fn odd_root(x: f64, index: u64) -> f64 {
    assert!(index % 2 == 1, "root index must be odd");
    if index == 1 {
        return x;
    }
    if x == 0.0 {
        return x;
    }
    x.signum() * x.abs().powf(1.0 / index as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_hit_terminates_with_zero_error() {
        let f = approximate(0.6, 1e-9).unwrap();
        assert_eq!((f.m, f.n), (1, 2));
        assert_eq!(f.err, 0.0);
        assert_eq!(f.value(), 0.6);
    }

    #[test]
    fn value_of_trivial_fractions() {
        assert_eq!(OddFraction { m: 0, n: 0, err: 0.0 }.value(), 1.0);
        assert_eq!(OddFraction { m: 1, n: 2, err: 0.0 }.value(), 0.6);
    }

    #[test]
    fn published_certificate_for_sqrt2_minus_one() {
        // 415/1001 approximates sqrt(2)-1 to within 6e-4 (the recomputed
        // distance is 3.7185e-4)
        let alpha = std::f64::consts::SQRT_2 - 1.0;
        let f = OddFraction::for_alpha(alpha, 207, 500);
        assert_eq!(f.numerator(), 415);
        assert_eq!(f.denominator(), 1001);
        assert!(f.err < 6e-4);
        assert!((f.err - 3.7185e-4).abs() < 1e-7);
        // the minimal-n search finds a smaller certificate for the same eps
        let g = approximate(alpha, 6e-4).unwrap();
        assert!(g.n < 500);
        assert!(g.err < 6e-4);
    }

    #[test]
    fn half_needs_denominator_fifty_one() {
        // |1/2 - (2m+1)/(2n+1)| = |4m - 2n + 1| / (2(2n+1)) >= 1/(2(2n+1)),
        // so err < 0.01 forces 2n+1 > 50
        let f = approximate(0.5, 0.01).unwrap();
        assert_eq!((f.m, f.n), (12, 25));
        assert!((f.err - 1.0 / 102.0).abs() < 1e-15);
    }

    #[test]
    fn search_exhaustion_is_reported() {
        let err = approximate_capped(0.5, 1e-12, 200).unwrap_err();
        assert!(matches!(err, ApproxError::SearchExhausted { cap: 200, .. }));
    }

    #[test]
    fn soundness_and_minimality_small_scale() {
        // brute force over all smaller denominators
        for &(alpha, eps) in &[
            (0.123, 1e-3),
            (0.5, 1e-3),
            (0.9137, 1e-4),
            (std::f64::consts::FRAC_1_PI, 1e-4),
        ] {
            let f = approximate(alpha, eps).unwrap();
            assert!((alpha - f.value()).abs() < eps);
            assert!((f.err - (alpha - f.value()).abs()).abs() <= f64::EPSILON);
            for n in 0..f.n {
                for m in 0..=n {
                    let v = (2 * m + 1) as f64 / (2 * n + 1) as f64;
                    assert!(
                        (alpha - v).abs() >= eps,
                        "smaller certificate {m}/{n} exists for alpha={alpha}"
                    );
                }
            }
        }
    }

    #[test]
    fn dense_orders_always_found_under_default_cap() {
        // eps = 10^-k for k <= 6 always admits a certificate
        let mut alpha = 0.017;
        for k in 1..=6 {
            let eps = 10f64.powi(-k);
            let f = approximate(alpha, eps).unwrap();
            assert!(f.err < eps);
            alpha = (alpha + 0.161) % 1.0;
            if alpha <= 0.0 {
                alpha += 0.5;
            }
        }
    }

    #[test]
    fn odd_roots_preserve_sign() {
        assert_eq!(odd_root(-8.0, 3), -2.0);
        assert_eq!(odd_root(8.0, 3), 2.0);
        assert_eq!(odd_root(-5.0, 1), -5.0);
        assert_eq!(odd_root(0.0, 5), 0.0);
        let r = odd_root(-2.0, 3);
        assert!((r * r * r + 2.0).abs() < 1e-14);
    }

    #[test]
    #[should_panic(expected = "odd")]
    fn even_root_index_rejected() {
        let _ = odd_root(2.0, 4);
    }
}
