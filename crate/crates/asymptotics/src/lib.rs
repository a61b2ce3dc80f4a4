//! Large-N asymptotics of the 2-periodic lozenge tiling model.
//!
//! Positions are scaled as `x/N → 1+ξ`, `y/N → 1+η`, so the hexagon becomes
//! `𝓗 = {|ξ| ≤ 1, |η| ≤ 1, |η−ξ| ≤ 1}`. The module covers the equilibrium
//! problem on `|z| = √α`, the saddle point `s(ξ,η)` with its liquid/frozen
//! classification and limiting lozenge densities, the arctic curve, the
//! phase functions and the limiting bulk kernel.

mod arctic;
mod equilibrium;
mod local;
mod phase;
pub mod quad;
mod saddle;

use thiserror::Error;

pub use arctic::{
    arctic_geometry, cusp_points, liquid_grid, tangency_points, xi_cusp, ArcticGeometry, LiquidGrid, TangencyPoints,
};
pub use equilibrium::{equilibrium_data, g_phi_eval, mu0_density, q_alpha, q_sqrt, Equilibrium, Regime, Sheet};
pub use local::{local_kernel, local_kernel_at};
pub use num_complex::Complex64;
pub use phase::{phase_phi, phase_psi};
pub use saddle::{
    inverse_map, limiting_densities, saddle, upper_half_roots, Angles, Classification, SaddleReport, SaddleSolver,
    ScaledPoint, IMAG_BAND,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("z = {re}{im:+}i is a pole")]
    Pole { re: f64, im: f64 },
    #[error("z = {re}{im:+}i lies on a branch cut")]
    OnCut { re: f64, im: f64 },
    #[error("angle {t} is outside the support of the equilibrium measure")]
    OutsideSupport { t: f64 },
    #[error("({xi}, {eta}) is outside the scaled hexagon")]
    OutsideHexagon { xi: f64, eta: f64 },
    #[error("point is not in the liquid region")]
    NotLiquid,
    #[error("saddle point {re} is real")]
    RealSaddle { re: f64 },
}
