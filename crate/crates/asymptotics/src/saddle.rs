use std::f64::consts::PI;

use hexatile_lattice::Alpha;
use num_complex::Complex64;
use serde::Serialize;

use crate::equilibrium::{Equilibrium, Regime, Sheet};
use crate::AsymptoticsError;

/// Saddles with `0 < Im s < IMAG_BAND` are reported as `Boundary`.
pub const IMAG_BAND: f64 = 1e-8;

/// A root is real when `|Im r| < REAL_ROOT · (1 + |r|)`.
const REAL_ROOT: f64 = 1e-10;

/// Points closer than this to the edge of 𝓗 are pulled inside before solving.
const NUDGE: f64 = 1e-9;

/// Roots beyond this modulus come from a vanishing leading coefficient.
const FAR_ROOT: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaledPoint {
    pub xi: f64,
    pub eta: f64,
}

impl ScaledPoint {
    pub fn new(xi: f64, eta: f64) -> Result<Self, AsymptoticsError> {
        let p = Self { xi, eta };
        if p.margin() < -1e-12 || !xi.is_finite() || !eta.is_finite() {
            return Err(AsymptoticsError::OutsideHexagon { xi, eta });
        }
        Ok(p)
    }

    /// Scaled position of the lattice point `(x, y)`.
    pub fn from_lattice(n: usize, x: f64, y: f64) -> Self {
        Self { xi: x / n as f64 - 1.0, eta: y / n as f64 - 1.0 }
    }

    /// `1 − max(|ξ|, |η|, |η−ξ|)`: positive inside 𝓗, zero on its edge.
    pub fn margin(&self) -> f64 {
        1.0 - self.xi.abs().max(self.eta.abs()).max((self.eta - self.xi).abs())
    }

    pub fn contains(&self) -> bool {
        self.margin() >= 0.0
    }

    pub fn reflected(&self) -> Self {
        Self { xi: -self.xi, eta: -self.eta }
    }

    fn nudged(self) -> Self {
        let m = 1.0 - self.margin();
        if m <= 1.0 - NUDGE {
            return self;
        }
        let f = (1.0 - NUDGE) / m;
        Self { xi: self.xi * f, eta: self.eta * f }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Liquid,
    FrozenCorner,
    FrozenStaircase,
    Boundary,
}

/// Angles of the triangles `{−1, 0, s}` (φ) and `{−α, 0, s}` (ψ), listed as
/// the angle at the negative vertex, at `s`, and at `0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Angles {
    pub phi: [f64; 3],
    pub psi: [f64; 3],
}

impl Angles {
    pub fn from_saddle(s: Complex64, alpha: f64) -> Self {
        let s = if s.im == 0.0 { Complex64::new(s.re, 0.0) } else { s };
        let arg_s = s.arg();
        let a1 = (s + 1.0).arg();
        let aa = (s + alpha).arg();
        let clamp = |v: f64| v.clamp(0.0, PI);
        let third = clamp(PI - arg_s);
        Self {
            phi: [clamp(a1), clamp(arg_s - a1), third],
            psi: [clamp(aa), clamp(arg_s - aa), third],
        }
    }

    /// Densities of types (I, II, III) at odd and even columns.
    pub fn densities(&self) -> ([f64; 3], [f64; 3]) {
        (self.psi.map(|a| a / PI), self.phi.map(|a| a / PI))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SaddleReport {
    pub point: ScaledPoint,
    pub classification: Classification,
    /// The saddle in the closed upper half-plane; for frozen corners the
    /// real root that selects the corner.
    pub s: Option<Complex64>,
    pub sheet: Option<Sheet>,
    pub angles: Angles,
    /// `(p_I, p_II, p_III)` at even columns.
    pub densities_even: [f64; 3],
    /// `(p_I, p_II, p_III)` at odd columns.
    pub densities_odd: [f64; 3],
}

impl SaddleReport {
    pub fn densities(&self, even: bool) -> [f64; 3] {
        if even {
            self.densities_even
        } else {
            self.densities_odd
        }
    }

    pub fn is_liquid(&self) -> bool {
        self.classification == Classification::Liquid
    }
}

/// Real polynomial with coefficients in ascending order.
#[derive(Clone, Debug)]
struct Poly(Vec<f64>);

impl Poly {
    fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|i| self.0.get(i).unwrap_or(&0.0) - other.0.get(i).unwrap_or(&0.0)).collect())
    }

    fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn eval_c(&self, z: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    fn derivative(&self) -> Poly {
        Poly(self.0.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect())
    }

    /// Quotient by the monic quadratic `x² + p x + q` (remainder dropped).
    fn deflate2(&self, p: f64, q: f64) -> Poly {
        let c = &self.0;
        let n = c.len() - 1;
        let mut quot = vec![0.0; n - 1];
        let mut r = c.clone();
        for k in (2..=n).rev() {
            let lead = r[k];
            quot[k - 2] = lead;
            r[k - 1] -= p * lead;
            r[k - 2] -= q * lead;
        }
        Poly(quot)
    }

    /// All roots by Durand–Kerner iteration.
    fn roots(&self) -> Vec<Complex64> {
        let mut c = self.0.clone();
        while c.len() > 1 && c.last().is_some_and(|v| v.abs() < 1e-300) {
            c.pop();
        }
        let n = c.len() - 1;
        if n == 0 {
            return Vec::new();
        }
        let lead = c[n];
        let monic = Poly(c.iter().map(|v| v / lead).collect());
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powi(k as i32)).collect();
        for _ in 0..2000 {
            let mut change: f64 = 0.0;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                let step = monic.eval_c(z[i]) / den;
                z[i] -= step;
                change = change.max(step.norm());
            }
            if change < 1e-15 {
                break;
            }
        }
        let d = monic.derivative();
        for zi in z.iter_mut() {
            let dv = d.eval_c(*zi);
            if dv.norm() > 0.0 {
                *zi -= monic.eval_c(*zi) / dv;
            }
        }
        z
    }
}

fn quadratic(a: f64, b: f64, c: f64) -> Vec<Complex64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() < 1e-15 * scale {
        return if b == 0.0 { Vec::new() } else { vec![Complex64::new(-c / b, 0.0)] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a.abs());
        return vec![Complex64::new(re, im), Complex64::new(re, -im)];
    }
    let sign = if b < 0.0 { -1.0 } else { 1.0 };
    let q = -0.5 * (b + sign * disc.sqrt());
    if q == 0.0 {
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    vec![Complex64::new(q / a, 0.0), Complex64::new(c / q, 0.0)]
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // f(lo) > 0 ≥ f(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Candidate roots of the saddle-point equation before classification.
struct Roots {
    /// Upper-half-plane root with its sheet, if any root is non-real.
    complex: Option<(Complex64, Sheet)>,
    /// Real roots that are not forced into `[−1, −α]`.
    real: Vec<f64>,
}

/// Saddle-point solver for one α.
#[derive(Clone, Debug)]
pub struct SaddleSolver {
    eq: Equilibrium,
}

impl SaddleSolver {
    pub fn new(alpha: &Alpha) -> Self {
        Self { eq: Equilibrium::new(alpha) }
    }

    pub fn equilibrium(&self) -> &Equilibrium {
        &self.eq
    }

    fn alpha(&self) -> f64 {
        self.eq.alpha
    }

    /// `R(s) = η(s+1)(s+α) − ξ s (s + (1+α)/2)`, the right-hand side of
    /// `s (s+1)(s+α) Q_α^{1/2}(s) = R(s)`.
    fn r_poly(&self, p: ScaledPoint) -> Poly {
        let a = self.alpha();
        Poly(vec![p.eta * a, (1.0 + a) * (p.eta - p.xi / 2.0), p.eta - p.xi])
    }

    /// `s²(s+1)²(s+α)² Q_α(s)`.
    fn q_numerator(&self) -> Poly {
        let a = self.alpha();
        let sa = self.eq.sqrt_alpha();
        match self.eq.regime {
            Regime::High => {
                let m = -2.0 * self.eq.z_plus.re;
                Poly(vec![a, 2.0 * sa, 1.0]).mul(&Poly(vec![a, m, 1.0]))
            }
            _ => {
                let pair = Poly(vec![a, (1.0 + 3.0 * a) / 2.0, 1.0]);
                pair.mul(&pair)
            }
        }
    }

    /// The quartic `Π_α(s) = s²(s+1)²(s+α)² Q_α(s) − R(s)²`.
    fn quartic(&self, p: ScaledPoint) -> Poly {
        let r = self.r_poly(p);
        self.q_numerator().sub(&r.mul(&r))
    }

    fn roots(&self, p: ScaledPoint) -> Roots {
        match self.eq.regime {
            Regime::High => self.roots_high(p),
            _ => self.roots_low(p),
        }
    }

    /// For α ≤ 1/9 the quartic factors as `(P − R)(P + R)` with
    /// `P = s² + (1+3α)s/2 + α`; sheet σ solves `σP = R`.
    fn roots_low(&self, p: ScaledPoint) -> Roots {
        let a = self.alpha();
        let mut complex: Option<(Complex64, Sheet)> = None;
        let mut real = Vec::new();
        for sheet in [Sheet::Plus, Sheet::Minus] {
            let sg = sheet.sign();
            let qa = 1.0 - sg * (p.eta - p.xi);
            let qb = (1.0 + 3.0 * a) / 2.0 - sg * (1.0 + a) * (p.eta - p.xi / 2.0);
            let qc = a * (1.0 - sg * p.eta);
            collect(&quadratic(qa, qb, qc), sheet, &mut complex, &mut real);
        }
        Roots { complex, real }
    }

    /// For α > 1/9 two real roots are forced into `[−1, −√α]` and
    /// `[−√α, −α]` by the signs of `Π_α` at `−1`, `−√α`, `−α`; they are
    /// bracketed, divided out, and the remaining quadratic decides.
    fn roots_high(&self, p: ScaledPoint) -> Roots {
        let a = self.alpha();
        let sa = self.eq.sqrt_alpha();
        let pi = self.quartic(p);
        let rest = if self.eq.alpha == 1.0 {
            // Π_1 = (s+1)² [(s²+s+1) − ((η−ξ)s + η)²]
            let d = p.eta - p.xi;
            Poly(vec![1.0 - p.eta * p.eta, 1.0 - 2.0 * p.eta * d, 1.0 - d * d])
        } else if (p.xi / 2.0 - p.eta).abs() < 1e-12 {
            pi.deflate2(2.0 * sa, a)
        } else {
            let f = |x: f64| pi.eval(x);
            let r1 = bisect(f, -1.0, -sa);
            let r2 = bisect(f, -a, -sa);
            pi.deflate2(-(r1 + r2), r1 * r2)
        };
        let roots = quadratic(rest.0[2], rest.0[1], rest.0[0]);
        let mut complex = None;
        let mut real = Vec::new();
        collect(&roots, Sheet::Plus, &mut complex, &mut real);
        if let Some((s, _)) = complex {
            let s = self.polish(&pi, s);
            complex = Some((s, self.sheet_of(p, s)));
        }
        Roots { complex, real }
    }

    fn polish(&self, pi: &Poly, s: Complex64) -> Complex64 {
        let d = pi.derivative().eval_c(s);
        if d.norm() == 0.0 {
            return s;
        }
        let t = s - pi.eval_c(s) / d;
        if t.im > 0.0 && pi.eval_c(t).norm() <= pi.eval_c(s).norm() {
            t
        } else {
            s
        }
    }

    /// `c(s) = −s/(2(s+1)) − s/(2(s+α))`, so the saddle equation reads
    /// `s Q_α^{1/2}(s) = c(s) ξ + η`.
    fn c_coeff(&self, s: Complex64) -> Complex64 {
        -s / (2.0 * (s + 1.0)) - s / (2.0 * (s + self.alpha()))
    }

    fn sheet_of(&self, p: ScaledPoint, s: Complex64) -> Sheet {
        let rhs = self.c_coeff(s) * p.xi + p.eta;
        let q = s * self.eq.q_sqrt_sheet(s, Sheet::Plus).unwrap_or(Complex64::new(f64::NAN, 0.0));
        if (rhs - q).norm() <= (rhs + q).norm() {
            Sheet::Plus
        } else {
            Sheet::Minus
        }
    }

    pub fn saddle(&self, p: ScaledPoint) -> SaddleReport {
        let q = p.nudged();
        let roots = self.roots(q);
        let a = self.alpha();
        let (classification, s, sheet, effective) = match roots.complex {
            Some((s, sheet)) if s.im >= IMAG_BAND => (Classification::Liquid, Some(s), Some(sheet), s),
            Some((s, sheet)) => {
                let r = Complex64::new(s.re, 0.0);
                (Classification::Boundary, Some(r), Some(sheet), r)
            }
            None => match roots.real.iter().find(|r| r.abs() < FAR_ROOT && !(-1.0..=-a).contains(*r)) {
                Some(&r) => {
                    let r = Complex64::new(r, 0.0);
                    (Classification::FrozenCorner, Some(r), None, r)
                }
                None => (Classification::FrozenStaircase, None, None, Complex64::new(-a.sqrt(), 0.0)),
            },
        };
        let angles = Angles::from_saddle(effective, a);
        let (densities_even, densities_odd) = angles.densities();
        SaddleReport { point: p, classification, s, sheet, angles, densities_even, densities_odd }
    }

    /// Liquid test without building the report.
    pub fn is_liquid(&self, p: ScaledPoint) -> bool {
        if p.margin() <= 0.0 {
            return false;
        }
        matches!(self.roots(p.nudged()).complex, Some((s, _)) if s.im >= IMAG_BAND)
    }

    /// Every root of `Π_α` with `Im > 1e−6`, found by a generic root finder
    /// without the structure used by [`SaddleSolver::saddle`]. The cutoff
    /// sits above the `√ε` scatter of double real roots.
    pub fn upper_half_roots(&self, p: ScaledPoint) -> Vec<Complex64> {
        self.quartic(p.nudged()).roots().into_iter().filter(|r| r.im >= 1e-6).collect()
    }

    /// Recovers `(ξ, η)` from a saddle `s ∈ ℂ⁺` on a given sheet.
    pub fn inverse_map(&self, s: Complex64, sheet: Sheet) -> Result<ScaledPoint, AsymptoticsError> {
        if s.im <= 0.0 {
            return Err(AsymptoticsError::RealSaddle { re: s.re });
        }
        let r = s * self.eq.q_sqrt_sheet(s, sheet)?;
        let c = self.c_coeff(s);
        let xi = r.im / c.im;
        Ok(ScaledPoint { xi, eta: r.re - c.re * xi })
    }
}

fn collect(roots: &[Complex64], sheet: Sheet, complex: &mut Option<(Complex64, Sheet)>, real: &mut Vec<f64>) {
    for r in roots {
        if r.im.abs() < REAL_ROOT * (1.0 + r.norm()) {
            real.push(r.re);
        } else if r.im > 0.0 && complex.is_none_or(|(c, _)| c.im < r.im) {
            *complex = Some((*r, sheet));
        }
    }
}

pub fn saddle(p: ScaledPoint, alpha: &Alpha) -> SaddleReport {
    SaddleSolver::new(alpha).saddle(p)
}

/// `(even, odd)` density triples of a liquid point.
pub fn limiting_densities(report: &SaddleReport) -> Result<([f64; 3], [f64; 3]), AsymptoticsError> {
    if !report.is_liquid() {
        return Err(AsymptoticsError::NotLiquid);
    }
    Ok((report.densities_even, report.densities_odd))
}

pub fn inverse_map(s: Complex64, sheet: Sheet, alpha: &Alpha) -> Result<ScaledPoint, AsymptoticsError> {
    SaddleSolver::new(alpha).inverse_map(s, sheet)
}

pub fn upper_half_roots(p: ScaledPoint, alpha: &Alpha) -> Vec<Complex64> {
    SaddleSolver::new(alpha).upper_half_roots(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solver(n: i64, d: i64) -> SaddleSolver {
        SaddleSolver::new(&Alpha::ratio(n, d).unwrap())
    }

    #[test]
    fn uniform_center() {
        let r = solver(1, 1).saddle(ScaledPoint::new(0.0, 0.0).unwrap());
        assert_eq!(r.classification, Classification::Liquid);
        let s = r.s.unwrap();
        assert!((s - Complex64::from_polar(1.0, 2.0 * PI / 3.0)).norm() < 1e-14);
        for d in r.densities_even.iter().chain(&r.densities_odd) {
            assert!((d - 1.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn low_regime_center_is_frozen() {
        let r = solver(1, 16).saddle(ScaledPoint::new(0.0, 0.0).unwrap());
        assert_eq!(r.classification, Classification::FrozenStaircase);
        assert_eq!(r.densities_even, [1.0, 0.0, 0.0]);
        assert_eq!(r.densities_odd, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn corners_of_the_hexagon() {
        for (n, d) in [(1, 16), (1, 4), (1, 1)] {
            let s = solver(n, d);
            let at = |xi: f64, eta: f64| s.saddle(ScaledPoint::new(xi, eta).unwrap());
            for (xi, eta, t) in [(1.0, 1.0, 1), (-1.0, -1.0, 1), (0.0, 1.0, 2), (0.0, -1.0, 2), (-1.0, 0.0, 0), (1.0, 0.0, 0)] {
                let r = at(xi, eta);
                assert_eq!(r.classification, Classification::FrozenCorner, "α={n}/{d} ({xi},{eta})");
                let mut want = [0.0; 3];
                want[t] = 1.0;
                assert_eq!(r.densities_even, want);
                assert_eq!(r.densities_odd, want);
            }
        }
    }

    #[test]
    fn ellipse_at_alpha_one() {
        let s = solver(1, 1);
        for k in 0..24 {
            let t = k as f64 * PI / 12.0 + 0.1;
            // 2u² + 6v² = 3 with u, v the rotated coordinates
            let (u, v) = (t.cos() * 1.5f64.sqrt(), t.sin() * 0.5f64.sqrt());
            let (xi, eta) = ((u + v) / 2f64.sqrt(), (u - v) / 2f64.sqrt());
            let p = ScaledPoint { xi, eta };
            assert!((4.0 * xi * xi - 4.0 * xi * eta + 4.0 * eta * eta - 3.0).abs() < 1e-12);
            let inside = ScaledPoint { xi: 0.99 * xi, eta: 0.99 * eta };
            let outside = ScaledPoint { xi: 1.01 * xi, eta: 1.01 * eta };
            assert!(s.is_liquid(inside));
            assert!(!s.is_liquid(outside));
            // on the curve the saddle degenerates to the real axis
            assert!(s.saddle(p).s.unwrap().im < 1e-5);
        }
    }

    #[test]
    fn quartic_has_two_roots_between_the_poles() {
        for (n, d) in [(1, 8), (3, 10), (1, 2), (4, 5)] {
            let s = solver(n, d);
            let a = s.alpha();
            for (xi, eta) in [(0.3, 0.1), (-0.5, 0.2), (0.8, 0.4), (0.0, 0.0), (-0.9, -0.95)] {
                let roots = s.quartic(ScaledPoint { xi, eta }).roots();
                let inside = roots.iter().filter(|r| r.im.abs() < 1e-6 && (-1.0 - 1e-9..=-a + 1e-9).contains(&r.re)).count();
                assert!(inside >= 2, "α={n}/{d} ({xi},{eta}): {roots:?}");
            }
        }
    }

    #[test]
    fn quartic_sign_at_minus_sqrt_alpha() {
        let s = solver(3, 10);
        let sa = s.eq.sqrt_alpha();
        let a = s.alpha();
        for (xi, eta) in [(0.3, 0.1), (-0.5, 0.2), (0.8, 0.4)] {
            let p = ScaledPoint { xi, eta };
            let v = s.quartic(p).eval(-sa);
            let expected = -a * (1.0 - sa).powi(4) * (xi / 2.0 - eta).powi(2);
            assert!((v - expected).abs() < 1e-14);
        }
    }
}
