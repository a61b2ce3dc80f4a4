use std::sync::OnceLock;

use hexatile_lattice::{Alpha, Face, HexagonSpec, LozengeType};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::{ortho_basis, ExactError, OrthoBasis};

/// Result of a quadrature evaluation together with its self-consistency
/// under node doubling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatValue {
    pub value: f64,
    /// Change between the two finest node counts tried.
    pub delta: f64,
    /// False when two successive doublings both changed the value by
    /// at least the tolerance.
    pub converged: bool,
}

/// Doubling tolerance of the self-consistency contract.
pub const DOUBLING_TOLERANCE: f64 = 1e-8;

/// The kernel integrals evaluated by the M-node trapezoidal rule on the
/// circle |z| = √α, for both the w and the z contour.
///
/// The integrands are Laurent polynomials, so the rule is exact once M
/// exceeds their degree span; what limits accuracy is cancellation. The
/// bilinear form `Σ_n U_n V_n / κ_n` cancels many orders of magnitude, so
/// node values are carried in binary floating point with a working
/// precision that grows with N. The recurrence coefficients of `p_n` come
/// from the exact basis.
pub struct FloatKernel {
    n: usize,
    alpha: Rational,
    nodes: usize,
    prec: u32,
    alpha_f: Float,
    inv_m: Float,
    /// `p_n(z_i)` for n < N.
    p: Vec<Vec<Complex>>,
    inv_kappa: Vec<Float>,
    /// `(z_i + 1)^k`, `(z_i + α)^k` for k = 0..=N.
    pow1: Vec<Vec<Complex>>,
    powa: Vec<Vec<Complex>>,
    /// `e^{iπ j / M}` for j < 2M.
    unit: Vec<Complex>,
    radius: Float,
    basis: OrthoBasis,
    doubled: OnceLock<Box<FloatKernel>>,
}

/// Working precision in bits for size N.
pub fn default_precision(n: usize) -> u32 {
    128 + 4 * n as u32
}

/// Node count with no aliasing for any face: the integrands span at most
/// 5N + 2 powers.
pub fn default_nodes(n: usize) -> usize {
    (5 * n + 3).next_power_of_two().max(64)
}

impl FloatKernel {
    pub fn with_defaults(n: usize, alpha: &Alpha) -> Result<Self, ExactError> {
        Self::new(n, alpha, default_nodes(n))
    }

    pub fn new(n: usize, alpha: &Alpha, nodes: usize) -> Result<Self, ExactError> {
        Self::with_basis(ortho_basis(n, alpha)?, nodes, default_precision(n))
    }

    pub fn with_basis(basis: OrthoBasis, nodes: usize, prec: u32) -> Result<Self, ExactError> {
        if nodes < 64 || !nodes.is_power_of_two() {
            return Err(ExactError::Nodes(nodes));
        }
        let n = basis.n();
        let alpha = basis.alpha().exact().clone();
        let alpha_f = Float::with_val(prec, &alpha);
        let radius = Float::with_val(prec, alpha_f.sqrt_ref());
        let pi = Float::with_val(prec, Constant::Pi);
        let unit: Vec<Complex> = (0..2 * nodes)
            .map(|j| {
                let theta = Float::with_val(prec, &pi * j as u32) / nodes as u32;
                let (s, c) = theta.sin_cos(Float::new(prec));
                Complex::with_val(prec, (c, s))
            })
            .collect();
        let z: Vec<Complex> =
            (0..nodes).map(|i| Complex::with_val(prec, &unit[2 * i + 1] * &radius)).collect();

        let (b, a) = basis.recurrence();
        let b: Vec<Float> = b.iter().map(|x| Float::with_val(prec, x)).collect();
        let a: Vec<Float> = a.iter().map(|x| Float::with_val(prec, x)).collect();
        let mut p = vec![vec![Complex::with_val(prec, 1); nodes]];
        if n > 1 {
            p.push(z.iter().map(|zi| Complex::with_val(prec, zi - &b[0])).collect());
        }
        for k in 1..n.saturating_sub(1) {
            let next = (0..nodes)
                .map(|i| {
                    let mut v = Complex::with_val(prec, &z[i] - &b[k]);
                    v *= &p[k][i];
                    v -= Complex::with_val(prec, &p[k - 1][i] * &a[k - 1]);
                    v
                })
                .collect();
            p.push(next);
        }
        let inv_kappa = basis.kappas()[..n].iter().map(|k| Float::with_val(prec, k).recip()).collect();
        let powers = |shift: &Float| -> Vec<Vec<Complex>> {
            let base: Vec<Complex> = z.iter().map(|zi| Complex::with_val(prec, zi + shift)).collect();
            let mut table = vec![vec![Complex::with_val(prec, 1); nodes]];
            for k in 0..n {
                let row = (0..nodes).map(|i| Complex::with_val(prec, &table[k][i] * &base[i])).collect();
                table.push(row);
            }
            table
        };
        let pow1 = powers(&Float::with_val(prec, 1));
        let powa = powers(&alpha_f);
        let inv_m = Float::with_val(prec, 1) / nodes as u32;
        Ok(Self {
            n,
            alpha,
            nodes,
            prec,
            alpha_f,
            inv_m,
            p,
            inv_kappa,
            pow1,
            powa,
            unit,
            radius,
            basis,
            doubled: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// The same kernel with twice as many nodes, built once on demand.
    pub fn doubled(&self) -> &FloatKernel {
        self.doubled.get_or_init(|| {
            Box::new(
                FloatKernel::with_basis(self.basis.clone(), 2 * self.nodes, self.prec)
                    .expect("doubling keeps a valid node count"),
            )
        })
    }

    /// `z_i^k / M` at node i.
    fn zpow(&self, i: usize, k: i64) -> Complex {
        let m2 = 2 * self.nodes as i64;
        let j = (k * (2 * i as i64 + 1)).rem_euclid(m2) as usize;
        let r = Float::with_val(self.prec, (&self.radius).pow(k as i32));
        let r = r * &self.inv_m;
        Complex::with_val(self.prec, &self.unit[j] * &r)
    }

    /// Node values `c (z+1)^e1 (z+α)^ea z^shift · z / M`.
    fn node_values(&self, scale: &Float, e1: u32, ea: u32, shift: i64) -> Vec<Complex> {
        (0..self.nodes)
            .map(|i| {
                let mut v = Complex::with_val(self.prec, &self.pow1[e1 as usize][i] * &self.powa[ea as usize][i]);
                v *= self.zpow(i, shift + 1);
                v *= scale;
                v
            })
            .collect()
    }

    /// `Σ_i p_n(z_i) g_i` for each n < N.
    fn project(&self, g: &[Complex]) -> Vec<Complex> {
        self.p
            .iter()
            .map(|pn| {
                let mut acc = Complex::new(self.prec);
                for (pv, gv) in pn.iter().zip(g) {
                    acc += pv * gv;
                }
                acc
            })
            .collect()
    }

    fn bilinear(&self, u: &[Complex], v: &[Complex]) -> f64 {
        let mut acc = Complex::new(self.prec);
        for ((un, vn), ik) in u.iter().zip(v).zip(&self.inv_kappa) {
            let mut t = Complex::with_val(self.prec, un * vn);
            t *= ik;
            acc += &t;
        }
        acc.real().to_f64()
    }

    fn z_side(&self, x: i64, y: i64) -> Vec<Complex> {
        let one = Float::with_val(self.prec, 1);
        self.project(&self.node_values(&one, floor_half(x), ceil_half(x), -y - 1))
    }

    fn w_side(&self, scale: &Float, e1: u32, ea: u32, shift: i64) -> Vec<Complex> {
        self.project(&self.node_values(scale, e1, ea, shift))
    }

    fn check_column(&self, x: i64) -> Result<(), ExactError> {
        let max = 2 * self.n as i64 - 1;
        if x < 1 || x > max {
            return Err(ExactError::ColumnRange { x, max });
        }
        Ok(())
    }

    /// `K_N(x1,y1,x2,y2)` at this node count.
    pub fn kernel(&self, x1: i64, y1: i64, x2: i64, y2: i64) -> Result<f64, ExactError> {
        self.check_column(x1)?;
        self.check_column(x2)?;
        let n = self.n as u32;
        let one = Float::with_val(self.prec, 1);
        let u = self.z_side(x1, y1);
        let v = self.w_side(&one, n - floor_half(x2), n - ceil_half(x2), y2 - 2 * self.n as i64);
        let mut value = self.bilinear(&u, &v);
        if x1 > x2 {
            let g = self.node_values(&one, floor_half(x1) - floor_half(x2), ceil_half(x1) - ceil_half(x2), -(y1 - y2 + 1));
            let mut acc = Complex::new(self.prec);
            for gi in &g {
                acc += gi;
            }
            value -= acc.real().to_f64();
        }
        Ok(value)
    }

    /// Probabilities of the three types at an interior face.
    pub fn face_probabilities(&self, face: Face) -> Result<[f64; 3], ExactError> {
        if !HexagonSpec::is_interior(self.n, face) {
            return Err(ExactError::FaceRange { x: face.x, y: face.y });
        }
        let (x, y) = (face.x, face.y);
        let n = self.n as u32;
        let (e1, ea, shift) = (n - floor_half(x), n - ceil_half(x), y - 2 * self.n as i64);
        let one = Float::with_val(self.prec, 1);
        let u = self.z_side(x, y);
        let (p1, p2) = if x % 2 == 0 {
            (
                self.bilinear(&u, &self.w_side(&one, e1, ea - 1, shift + 1)),
                self.bilinear(&u, &self.w_side(&self.alpha_f, e1, ea - 1, shift)),
            )
        } else {
            (
                self.bilinear(&u, &self.w_side(&one, e1 - 1, ea, shift + 1)),
                self.bilinear(&u, &self.w_side(&one, e1 - 1, ea, shift)),
            )
        };
        let p3 = 1.0 - self.bilinear(&u, &self.w_side(&one, e1, ea, shift));
        Ok([p1, p2, p3])
    }

    pub fn probability(&self, face: Face, t: LozengeType) -> Result<f64, ExactError> {
        Ok(self.face_probabilities(face)?[t.index()])
    }

    /// Kernel value with the doubling check of the node count (M, 2M, 4M).
    pub fn kernel_checked(&self, x1: i64, y1: i64, x2: i64, y2: i64) -> Result<FloatValue, ExactError> {
        let v1 = self.kernel(x1, y1, x2, y2)?;
        let d = self.doubled();
        let v2 = d.kernel(x1, y1, x2, y2)?;
        Ok(check_doubling(v1, v2, || d.doubled().kernel(x1, y1, x2, y2).unwrap_or(f64::NAN)))
    }

    /// Face probabilities with the doubling check; `delta` is the largest
    /// change over the three types.
    pub fn face_probabilities_checked(&self, face: Face) -> Result<([f64; 3], FloatValue), ExactError> {
        let a = self.face_probabilities(face)?;
        let d = self.doubled();
        let b = d.face_probabilities(face)?;
        let worst = |x: &[f64; 3], y: &[f64; 3]| (0..3).map(|i| (x[i] - y[i]).abs()).fold(0.0, f64::max);
        let delta = worst(&a, &b);
        if delta < DOUBLING_TOLERANCE {
            return Ok((b, FloatValue { value: b[2], delta, converged: true }));
        }
        let c = d.doubled().face_probabilities(face)?;
        let delta2 = worst(&b, &c);
        Ok((c, FloatValue { value: c[2], delta: delta2, converged: delta2 < DOUBLING_TOLERANCE }))
    }
}

fn check_doubling(v1: f64, v2: f64, finer: impl FnOnce() -> f64) -> FloatValue {
    let delta = (v2 - v1).abs();
    if delta < DOUBLING_TOLERANCE {
        return FloatValue { value: v2, delta, converged: true };
    }
    let v3 = finer();
    let delta2 = (v3 - v2).abs();
    FloatValue { value: v3, delta: delta2, converged: delta2 < DOUBLING_TOLERANCE }
}

fn floor_half(x: i64) -> u32 {
    x.div_euclid(2) as u32
}

fn ceil_half(x: i64) -> u32 {
    (x + 1).div_euclid(2) as u32
}

/// One kernel value by quadrature with `nodes` nodes, with the doubling
/// check.
pub fn kernel_k_float(
    n: usize,
    alpha: &Alpha,
    x1: i64,
    y1: i64,
    x2: i64,
    y2: i64,
    nodes: usize,
) -> Result<FloatValue, ExactError> {
    FloatKernel::new(n, alpha, nodes)?.kernel_checked(x1, y1, x2, y2)
}
