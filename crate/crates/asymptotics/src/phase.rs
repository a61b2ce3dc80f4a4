use num_complex::Complex64;

use crate::equilibrium::Equilibrium;
use crate::saddle::ScaledPoint;
use crate::AsymptoticsError;

fn field(z: Complex64, p: ScaledPoint, alpha: f64) -> Complex64 {
    p.xi / 2.0 * ((z + 1.0).ln() + (z + alpha).ln()) - p.eta * z.ln()
}

/// `Φ_α(z; ξ, η) = φ(z) + (ξ/2) log((z+1)(z+α)) − η log z`.
pub fn phase_phi(z: Complex64, p: ScaledPoint, eq: &Equilibrium) -> Result<Complex64, AsymptoticsError> {
    Ok(eq.phi(z)? + field(z, p, eq.alpha))
}

/// `Ψ_α(z; ξ, η) = −φ(z) + (ξ/2) log((z+1)(z+α)) − η log z`.
pub fn phase_psi(z: Complex64, p: ScaledPoint, eq: &Equilibrium) -> Result<Complex64, AsymptoticsError> {
    Ok(-eq.phi(z)? + field(z, p, eq.alpha))
}
