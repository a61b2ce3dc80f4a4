use hexatile_lattice::Alpha;
use num_complex::Complex64;

use crate::quad;
use crate::AsymptoticsError;

/// Limiting bulk kernel at offsets `(u, v)` from an even base column:
/// `(1/2πi) ∫_{s̄}^{s} (z+1)^{⌊u₁/2⌋−⌊u₂/2⌋} (z+α)^{⌊(u₁+1)/2⌋−⌊(u₂+1)/2⌋} z^{−(v₁−v₂+1)} dz`.
///
/// The path is the two-segment polyline through `|s|` when `u₁ ≤ u₂` and
/// through `−|s|` otherwise.
pub fn local_kernel(u1: i64, v1: i64, u2: i64, v2: i64, s: Complex64, alpha: &Alpha) -> Result<Complex64, AsymptoticsError> {
    local_kernel_at(true, u1, v1, u2, v2, s, alpha)
}

/// [`local_kernel`] around a base column of either parity. An odd base
/// exchanges the roles of `z+1` and `z+α`.
pub fn local_kernel_at(
    even_base: bool,
    u1: i64,
    v1: i64,
    u2: i64,
    v2: i64,
    s: Complex64,
    alpha: &Alpha,
) -> Result<Complex64, AsymptoticsError> {
    if s.im <= 0.0 {
        return Err(AsymptoticsError::RealSaddle { re: s.re });
    }
    let a = alpha.to_f64();
    let floor_diff = (u1.div_euclid(2) - u2.div_euclid(2)) as i32;
    let ceil_diff = ((u1 + 1).div_euclid(2) - (u2 + 1).div_euclid(2)) as i32;
    let (e1, ea) = if even_base { (floor_diff, ceil_diff) } else { (ceil_diff, floor_diff) };
    let ez = -(v1 - v2 + 1) as i32;
    let f = |z: Complex64| (z + 1.0).powi(e1) * (z + a).powi(ea) * z.powi(ez);
    let mid = Complex64::new(if u1 <= u2 { s.norm() } else { -s.norm() }, 0.0);
    let tol = 1e-13;
    let total = quad::segment(f, s.conj(), mid, tol) + quad::segment(f, mid, s, tol);
    Ok(total / Complex64::new(0.0, 2.0 * std::f64::consts::PI))
}
