//! Adaptive composite Gauss–Legendre quadrature.

use std::collections::BinaryHeap;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

/// Default absolute tolerance.
pub const TOLERANCE: f64 = 1e-10;

/// Hard cap on integrand evaluations per integral.
pub const MAX_NODES: usize = 1 << 16;

const ORDER: usize = 15;

const START_PANELS: usize = 4;

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let gl = GaussLegendre::new(ORDER).expect("order is at least two");
        gl.into_node_weight_pairs()
    })
}

fn panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in rule() {
        acc += f(mid + half * x) * w;
    }
    acc * half
}

/// `∫_a^b f` to absolute tolerance `tol`. Globally adaptive: the panel
/// with the largest error estimate is bisected until the summed estimate
/// meets `tol` or `MAX_NODES` evaluations have been spent.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    // Several starting panels guard against a coarse estimate that agrees
    // with its refinement by accident.
    let mut heap = BinaryHeap::new();
    let h = (b - a) / START_PANELS as f64;
    for k in 0..START_PANELS {
        let (lo, hi) = (a + k as f64 * h, if k + 1 == START_PANELS { b } else { a + (k + 1) as f64 * h });
        heap.push(Panel::new(&f, lo, hi, panel(&f, lo, hi)));
    }
    let mut used = 3 * ORDER * START_PANELS;
    loop {
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= tol || used + 4 * ORDER > MAX_NODES {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            heap.push(Panel { error: 0.0, ..worst });
            continue;
        }
        heap.push(Panel::new(&f, worst.a, m, worst.left));
        heap.push(Panel::new(&f, m, worst.b, worst.right));
        used += 4 * ORDER;
    }
    heap.iter().map(|p| p.left + p.right).sum()
}

/// A panel with its two half-panel estimates.
struct Panel {
    a: f64,
    b: f64,
    left: Complex64,
    right: Complex64,
    error: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, whole: Complex64) -> Self {
        let m = 0.5 * (a + b);
        let (left, right) = (panel(f, a, m), panel(f, m, b));
        Self { a, b, left, right, error: (left + right - whole).norm() }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error).is_eq()
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Real-valued variant.
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    integrate(|t| Complex64::new(f(t), 0.0), a, b, tol).re
}

/// `∫ f(z) dz` along the straight segment from `z0` to `z1`.
pub fn segment<F: Fn(Complex64) -> Complex64>(f: F, z0: Complex64, z1: Complex64, tol: f64) -> Complex64 {
    let d = z1 - z0;
    integrate(|t| f(z0 + d * t) * d, 0.0, 1.0, tol)
}

/// `∫ f(z) dz` along the circular arc `r e^{it}`, t from `t0` to `t1`.
pub fn arc<F: Fn(Complex64) -> Complex64>(f: F, r: f64, t0: f64, t1: f64, tol: f64) -> Complex64 {
    integrate(
        |t| {
            let z = Complex64::from_polar(r, t);
            f(z) * Complex64::new(0.0, 1.0) * z
        },
        t0,
        t1,
        tol,
    )
}
