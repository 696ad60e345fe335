//! Numerics for linear constant-coefficient fractional differential
//! equations built around the Mittag-Leffler family.
//!
//! The crate provides:
//!
//! - [`gamma`]: Γ, the factorial convention `a! = Γ(a+1)`, and the total
//!   reciprocal factorial used to drop delta terms of fractional derivatives;
//! - [`mittag_leffler`]: series evaluation of `E_α`, `E_{α,β}` and the
//!   eigenfunction `h_α(x, λ) = Σ λ^{k-1} x^{kα-1} / Γ(kα)` together with the
//!   term-wise Riemann-Liouville power rule;
//! - [`odd_fraction`]: minimal-denominator approximation of an order
//!   `α ∈ (0,1)` by odd/odd rationals `(2m+1)/(2n+1)`;
//! - [`quad`]: Gauss-Jacobi rules for weakly singular kernels `(x-t)^γ`,
//!   `γ ∈ (-1, 0]`;
//! - [`exp_repr`]: the exponential-integral representation of
//!   `h_{1/(2n+1)}(x, ρ)` that replaces the series by convolutions of
//!   ordinary exponentials;
//! - [`cauchy`]: characteristic roots, Vandermonde coefficient solve and
//!   both evaluation forms of the solution of the fractional Cauchy problem;
//! - [`grid`]: sampling of a solved problem over an x grid (data-parallel
//!   when the `parallel` feature is enabled, which is the default);
//! - [`verify`]: self-contained verification suites behind the CLI.

mod dd;

pub mod cauchy;
pub mod exp_repr;
pub mod gamma;
pub mod grid;
pub mod mittag_leffler;
pub mod odd_fraction;
pub mod quad;
pub mod verify;

pub use cauchy::{CauchyError, CauchyProblem, CauchySolution, CharPoly, FracOrder};
pub use gamma::GammaError;
pub use mittag_leffler::{HParams, SeriesControl, SeriesError, SeriesEval};
pub use odd_fraction::{ApproxError, OddFraction};
pub use quad::{QuadError, QuadratureRule};
