//! Exact finite-N computations for the 2-periodic hexagon model.
//!
//! All contour integrals of Laurent polynomials are evaluated as exact
//! coefficient reads: `(1/2πi)∮ f(z) dz` is the coefficient of `z^{-1}` in
//! `f`. The pairing is
//! `⟨f, g⟩ = (1/2πi)∮ f g (z+1)^N (z+α)^N / z^{2N} dz`, whose monic
//! orthogonal polynomials build the Christoffel–Darboux kernel `R_N`.
//!
//! [`FloatKernel`] evaluates the same integrals by trapezoidal quadrature
//! on circles for sizes where exact arithmetic is too slow.

mod bivariate;
mod error;
mod float;
mod kernel;
mod laurent;
mod moments;
mod ortho;

pub use bivariate::Bivariate;
pub use error::ExactError;
pub use float::{default_nodes, default_precision, kernel_k_float, FloatKernel, FloatValue, DOUBLING_TOLERANCE};
pub use kernel::{expected_height, kernel_k, lozenge_probability, ExactKernel, FaceProbabilities, SplitH};
pub use laurent::LaurentSeries;
pub use moments::{lgv_weight, moments, step_counts, MomentTable};
pub use ortho::{ortho_basis, OrthoBasis};

/// Default largest N handled in exact arithmetic.
pub const DEFAULT_EXACT_N: usize = 12;

/// Largest N for exact arithmetic; `HEXATILE_EXACT_N` overrides the default.
pub fn exact_n_limit() -> usize {
    std::env::var("HEXATILE_EXACT_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_EXACT_N)
}
