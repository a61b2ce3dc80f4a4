use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use hexatile_lattice::Alpha;
use num_complex::Complex64;
use rug::Rational;
use serde::Serialize;

use crate::quad::{self, integrate, integrate_real};
use crate::AsymptoticsError;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Distance below which a point counts as sitting on a pole or a cut.
const NEAR: f64 = 1e-12;

/// Temperature regime, split at α = 1/9.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Low,
    Critical,
    High,
}

impl Regime {
    /// Exact comparison with 1/9.
    pub fn of(alpha: &Alpha) -> Self {
        match alpha.exact().cmp(&Rational::from((1, 9))) {
            std::cmp::Ordering::Less => Regime::Low,
            std::cmp::Ordering::Equal => Regime::Critical,
            std::cmp::Ordering::Greater => Regime::High,
        }
    }

    /// True when `Q_α` is the square of a rational function (α ≤ 1/9).
    pub fn is_rational(self) -> bool {
        self != Regime::High
    }
}

/// One of the two sheets of the Riemann surface of `Ξ_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sheet {
    Plus,
    Minus,
}

impl Sheet {
    pub fn sign(self) -> f64 {
        match self {
            Sheet::Plus => 1.0,
            Sheet::Minus => -1.0,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Sheet::Plus => Sheet::Minus,
            Sheet::Minus => Sheet::Plus,
        }
    }
}

/// Branch points of `Q_α`, the equilibrium measure `μ₀` on the circle
/// `|z| = √α` and the variational constant `ℓ`.
///
/// `Q_α^{1/2}` has its cut on the support `Σ₀ = {√α e^{it} : |t| ≤ θ_α}` in
/// the high regime and is rational otherwise. The critical case α = 1/9 uses
/// the rational formulas.
#[derive(Clone, Debug)]
pub struct Equilibrium {
    pub alpha: f64,
    pub regime: Regime,
    pub z_plus: Complex64,
    pub z_minus: Complex64,
    /// `arg z_+`, for α ≥ 1/9.
    pub theta_alpha: Option<f64>,
    sqrt_alpha: f64,
    ell: OnceLock<Complex64>,
}

pub fn equilibrium_data(alpha: &Alpha) -> Equilibrium {
    Equilibrium::new(alpha)
}

impl Equilibrium {
    pub fn new(alpha: &Alpha) -> Self {
        let regime = Regime::of(alpha);
        let a = alpha.to_f64();
        let sa = a.sqrt();
        let (z_plus, z_minus, theta_alpha) = match regime {
            Regime::Critical => (Complex64::new(-1.0 / 3.0, 0.0), Complex64::new(-1.0 / 3.0, 0.0), Some(PI)),
            Regime::Low => {
                let r = ((1.0 - a) * (1.0 - 9.0 * a)).sqrt() / 4.0;
                let c = -(1.0 + 3.0 * a) / 4.0;
                (Complex64::new(c + r, 0.0), Complex64::new(c - r, 0.0), None)
            }
            Regime::High => {
                let re = -(3.0 - 2.0 * sa + 3.0 * a) / 8.0;
                let im = 3.0 * (1.0 + sa) / 8.0 * ((1.0 - sa / 3.0) * (3.0 * sa - 1.0)).sqrt();
                let zp = Complex64::new(re, im);
                (zp, zp.conj(), Some(zp.arg()))
            }
        };
        Self { alpha: a, regime, z_plus, z_minus, theta_alpha, sqrt_alpha: sa, ell: OnceLock::new() }
    }

    /// The variational constant `ℓ`, computed on first use.
    pub fn ell(&self) -> Complex64 {
        *self.ell.get_or_init(|| self.compute_ell())
    }

    pub fn sqrt_alpha(&self) -> f64 {
        self.sqrt_alpha
    }

    /// Upper end of the arc carrying `μ₀`: θ_α in the high regime, π when
    /// the support is the full circle.
    fn support_end(&self) -> f64 {
        match self.regime {
            Regime::High => self.theta_alpha.expect("high regime has θ_α"),
            _ => PI,
        }
    }

    fn check_pole(&self, z: Complex64) -> Result<(), AsymptoticsError> {
        for p in [0.0, -1.0, -self.alpha] {
            if (z - p).norm() < NEAR {
                return Err(AsymptoticsError::Pole { re: z.re, im: z.im });
            }
        }
        Ok(())
    }

    /// `V_α(z) = 2 log z − log(z+1) − log(z+α)` with principal logarithms.
    pub fn v(&self, z: Complex64) -> Complex64 {
        2.0 * z.ln() - (z + 1.0).ln() - (z + self.alpha).ln()
    }

    pub fn v_prime(&self, z: Complex64) -> Complex64 {
        2.0 / z - 1.0 / (z + 1.0) - 1.0 / (z + self.alpha)
    }

    pub fn q_alpha(&self, z: Complex64) -> Result<Complex64, AsymptoticsError> {
        self.check_pole(z)?;
        let den = z * z * (z + 1.0).powi(2) * (z + self.alpha).powi(2);
        let num = match self.regime {
            Regime::High => (z + self.sqrt_alpha).powi(2) * (z - self.z_plus) * (z - self.z_minus),
            _ => ((z - self.z_plus) * (z - self.z_minus)).powi(2),
        };
        Ok(num / den)
    }

    /// `((z−z_+)(z−z_−))^{1/2} ∼ z` at infinity, with its cut on the arc of
    /// `|z| = √α` between `z_−` and `z_+` that passes through `through`.
    ///
    /// The Möbius map `(z−z_−)/(z−z_+)` sends the circle to a line through
    /// the origin and the chosen arc to a ray, which becomes the cut of the
    /// square root.
    fn w_arc(&self, z: Complex64, through: f64) -> Complex64 {
        if (z - self.z_plus).norm() < NEAR {
            return Complex64::new(0.0, 0.0);
        }
        let h = |u: Complex64| (u - self.z_minus) / (u - self.z_plus);
        let d = h(Complex64::new(through, 0.0));
        let d = d / d.norm();
        let root = (-h(z) / d).sqrt() / (-1.0 / d).sqrt();
        (z - self.z_plus) * root
    }

    fn on_support(&self, z: Complex64) -> bool {
        (z.norm() - self.sqrt_alpha).abs() < NEAR && z.arg().abs() <= self.support_end()
    }

    /// `Q_α^{1/2}` with cut `Σ₀` and `Q_α^{1/2} ∼ 1/z` at infinity. On `Σ₀`
    /// itself the boundary value from outside the circle is returned.
    pub fn q_sqrt(&self, z: Complex64) -> Result<Complex64, AsymptoticsError> {
        self.check_pole(z)?;
        let den = z * (z + 1.0) * (z + self.alpha);
        Ok(match self.regime {
            Regime::High => {
                let through = if self.on_support(z) { -self.sqrt_alpha } else { self.sqrt_alpha };
                (z + self.sqrt_alpha) * self.w_arc(z, through) / den
            }
            _ => (z - self.z_plus) * (z - self.z_minus) / den,
        })
    }

    /// The branch of `Q_α^{1/2}` on one sheet of the Riemann surface of
    /// `Ξ_α`, where the sheets are glued along the arc `𝒞` through `−√α`.
    pub fn q_sqrt_sheet(&self, z: Complex64, sheet: Sheet) -> Result<Complex64, AsymptoticsError> {
        self.check_pole(z)?;
        let den = z * (z + 1.0) * (z + self.alpha);
        let base = match self.regime {
            Regime::High => (z + self.sqrt_alpha) * self.w_arc(z, -self.sqrt_alpha) / den,
            _ => (z - self.z_plus) * (z - self.z_minus) / den,
        };
        Ok(base * sheet.sign())
    }

    /// `φ′`: sheet `+` of `Q_α^{1/2}` outside `|z| = √α` and sheet `−`
    /// inside. In the high regime this is [`Equilibrium::q_sqrt`] off the
    /// circle; for α ≤ 1/9 it flips the rational square root inside.
    pub fn phi_prime(&self, z: Complex64) -> Result<Complex64, AsymptoticsError> {
        let q = self.q_sqrt(z)?;
        Ok(if self.regime.is_rational() && z.norm() < self.sqrt_alpha { -q } else { q })
    }

    /// Residue of `φ′` at a pole, by the trapezoidal rule on a small circle
    /// around it.
    pub fn residue(&self, pole: f64) -> Complex64 {
        let mut radius: f64 = 0.25;
        for other in [0.0, -1.0, -self.alpha] {
            if other != pole {
                radius = radius.min(0.25 * (other - pole).abs());
            }
        }
        radius = radius.min(0.25 * (pole.abs() - self.sqrt_alpha).abs().max(1e-3));
        let m = 256;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..m {
            let e = Complex64::from_polar(radius, 2.0 * PI * (k as f64 + 0.5) / m as f64);
            acc += self.phi_prime(pole + e).expect("circle avoids the poles") * e;
        }
        acc / m as f64
    }

    /// Density of `μ₀` with respect to the angle `t` on `|z| = √α`.
    pub fn mu0_density(&self, t: f64) -> Result<f64, AsymptoticsError> {
        let end = self.support_end();
        if t.abs() > end * (1.0 + 1e-15) {
            return Err(AsymptoticsError::OutsideSupport { t });
        }
        Ok(self.density_unchecked(t))
    }

    fn density_unchecked(&self, t: f64) -> f64 {
        let s = Complex64::from_polar(self.sqrt_alpha, t);
        let q = match self.regime {
            Regime::High => (s + self.sqrt_alpha) * self.w_arc(s, -self.sqrt_alpha) / ((s + 1.0) * (s + self.alpha)),
            _ => (s - self.z_plus) * (s - self.z_minus) / ((s + 1.0) * (s + self.alpha)),
        };
        (q.re / PI).max(0.0)
    }

    /// `μ₀` of the arc from the start of the support up to angle `t`.
    pub fn mu0_cdf(&self, t: f64) -> f64 {
        match self.regime {
            Regime::High => {
                let theta = self.support_end();
                if t <= -theta {
                    return 0.0;
                }
                let u = (t / theta).min(1.0).asin();
                integrate_real(|v| self.density_unchecked(theta * v.sin()) * theta * v.cos(), -FRAC_PI_2, u, 1e-14)
            }
            _ => integrate_real(|v| self.density_unchecked(v), -PI, t.min(PI), 1e-14),
        }
    }

    /// Total mass of `μ₀`.
    pub fn mu0_mass(&self) -> f64 {
        self.mu0_cdf(PI)
    }

    fn on_g_cut(&self, z: Complex64) -> bool {
        let on_axis = z.im.abs() < NEAR && z.re <= -self.sqrt_alpha + NEAR;
        let on_arc = (z.norm() - self.sqrt_alpha).abs() < NEAR && z.arg() <= self.support_end() + NEAR;
        on_axis || on_arc
    }

    /// `g(z) = ∫ log(z−s) dμ₀(s)`, where `log(z−s)` has its cut along the
    /// circle from `s` clockwise to `−√α` and then along `(−∞, −√α]`.
    ///
    /// Writing `log(z−s) = Log(z+√α) − ∫ ds'/(z−s')` over that arc and
    /// exchanging the integrals gives
    /// `g(z) = Log(z+√α) − ∫_{−π}^{t_end} i s'/(z−s') μ₀(arg s > t') dt'`.
    pub fn g(&self, z: Complex64) -> Result<Complex64, AsymptoticsError> {
        if self.on_g_cut(z) {
            return Err(AsymptoticsError::OnCut { re: z.re, im: z.im });
        }
        Ok(self.g_unchecked(z))
    }

    fn g_unchecked(&self, z: Complex64) -> Complex64 {
        let sa = self.sqrt_alpha;
        let kernel = |t: f64| {
            let s = Complex64::from_polar(sa, t);
            I * s / (z - s)
        };
        let tol = 1e-12;
        let tail = match self.regime {
            Regime::High => {
                let theta = self.support_end();
                let free = integrate(kernel, -PI, -theta, tol);
                let weighted = integrate(
                    |u| {
                        let t = theta * u.sin();
                        kernel(t) * (1.0 - self.mu0_cdf(t)) * theta * u.cos()
                    },
                    -FRAC_PI_2,
                    FRAC_PI_2,
                    tol,
                );
                free + weighted
            }
            _ => integrate(|t| kernel(t) * (1.0 - self.mu0_cdf(t)), -PI, PI, tol),
        };
        (z + sa).ln() - tail
    }

    /// `g′ = V′/2 + φ′`.
    pub fn g_prime(&self, z: Complex64) -> Result<Complex64, AsymptoticsError> {
        Ok(self.v_prime(z) / 2.0 + self.phi_prime(z)?)
    }

    fn compute_ell(&self) -> Complex64 {
        let sa = self.sqrt_alpha;
        match self.regime {
            Regime::High => -2.0 * self.g_unchecked(self.z_plus) + self.v(self.z_plus),
            _ => {
                // g_−(√α): g at an outside point, continued with the exterior
                // derivative 2/z − 1/(z+α) down to the circle.
                let z0 = Complex64::new(2.0 * sa, 0.0);
                let a = self.alpha;
                let g_minus = self.g_unchecked(z0) + 2.0 * (sa / (2.0 * sa)).ln() - ((sa + a) / (2.0 * sa + a)).ln();
                -2.0 * g_minus + self.v(Complex64::new(sa, 0.0)) - I * PI
            }
        }
    }

    fn on_phi_cut(&self, z: Complex64) -> bool {
        let on_axis = z.im.abs() < NEAR && z.re <= NEAR;
        let on_circle = (z.norm() - self.sqrt_alpha).abs() < NEAR;
        let on_arc = match self.regime {
            Regime::High => on_circle && z.arg() <= self.support_end() + NEAR,
            _ => on_circle,
        };
        on_axis || on_arc
    }

    /// `φ`, the primitive of `Q_α^{1/2}` vanishing at `z_+` (high regime),
    /// or the piecewise primitive anchored at `√α` (α ≤ 1/9).
    ///
    /// The path runs radially from the anchor to the circle `|z|` and then
    /// along that circle, which keeps it off `(−∞, 0]` and the cut.
    pub fn phi(&self, z: Complex64) -> Result<Complex64, AsymptoticsError> {
        if self.on_phi_cut(z) {
            return Err(AsymptoticsError::OnCut { re: z.re, im: z.im });
        }
        self.check_pole(z)?;
        let sa = self.sqrt_alpha;
        let (anchor, t0) = match self.regime {
            Regime::High => (self.z_plus, self.support_end()),
            _ => (Complex64::new(sa, 0.0), 0.0),
        };
        let f = |u: Complex64| self.q_sqrt(u).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        let tol = 1e-13;
        let r = z.norm();
        let corner = Complex64::from_polar(r, t0);
        let radial = quad::segment(f, anchor, corner, tol);
        let around = quad::arc(f, r, t0, z.arg(), tol);
        let path = radial + around;
        Ok(match self.regime {
            Regime::High => path,
            _ if r > sa => -I * FRAC_PI_2 + path,
            _ => I * FRAC_PI_2 - path,
        })
    }

    /// `(g(z), φ(z))`.
    pub fn g_phi(&self, z: Complex64) -> Result<(Complex64, Complex64), AsymptoticsError> {
        Ok((self.g(z)?, self.phi(z)?))
    }
}

pub fn q_alpha(z: Complex64, alpha: &Alpha) -> Result<Complex64, AsymptoticsError> {
    Equilibrium::new(alpha).q_alpha(z)
}

/// The `Σ₀`-cut square root times the sign of `sheet`.
pub fn q_sqrt(z: Complex64, alpha: &Alpha, sheet: Sheet) -> Result<Complex64, AsymptoticsError> {
    Ok(Equilibrium::new(alpha).q_sqrt(z)? * sheet.sign())
}

pub fn mu0_density(t: f64, alpha: &Alpha) -> Result<f64, AsymptoticsError> {
    Equilibrium::new(alpha).mu0_density(t)
}

pub fn g_phi_eval(z: Complex64, alpha: &Alpha) -> Result<(Complex64, Complex64), AsymptoticsError> {
    Equilibrium::new(alpha).g_phi(z)
}
