use std::collections::{HashMap, VecDeque};

use hexatile_lattice::Alpha;
use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::Regime;
use crate::saddle::{SaddleSolver, ScaledPoint};

/// Points where the arctic curve touches the sides of 𝓗. Each pair is
/// symmetric under `(ξ, η) → (−ξ, −η)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TangencyPoints {
    #[serde(rename = "A1")]
    pub a1: [f64; 2],
    #[serde(rename = "A2")]
    pub a2: [f64; 2],
    #[serde(rename = "B1")]
    pub b1: [f64; 2],
    #[serde(rename = "B2")]
    pub b2: [f64; 2],
    #[serde(rename = "C1")]
    pub c1: [f64; 2],
    #[serde(rename = "C2")]
    pub c2: [f64; 2],
    #[serde(rename = "D1")]
    pub d1: [f64; 2],
    #[serde(rename = "D2")]
    pub d2: [f64; 2],
}

impl TangencyPoints {
    pub fn all(&self) -> [(&'static str, [f64; 2]); 8] {
        [
            ("A1", self.a1),
            ("A2", self.a2),
            ("B1", self.b1),
            ("B2", self.b2),
            ("C1", self.c1),
            ("C2", self.c2),
            ("D1", self.d1),
            ("D2", self.d2),
        ]
    }
}

pub fn tangency_points(alpha: &Alpha) -> TangencyPoints {
    let a = alpha.to_f64();
    let (a1, b1, c1, d1) = if Regime::of(alpha).is_rational() {
        (
            [-1.0, -a / (1.0 - a)],
            [1.0, (1.0 - 2.0 * a) / (1.0 - a)],
            [(1.0 - a) / (1.0 + a), 1.0],
            [-(1.0 - a) / (1.0 + a), 2.0 * a / (1.0 + a)],
        )
    } else {
        let sa = a.sqrt();
        let shift = 3.0 * (1.0 - sa) / (4.0 * (1.0 + sa));
        let k = 3.0 * sa / (2.0 * (1.0 + a));
        ([-1.0, -0.5 + shift], [1.0, 0.5 + shift], [1.25 - k, 1.0], [-1.25 + k, -0.25 + k])
    };
    let neg = |p: [f64; 2]| [-p[0], -p[1]];
    TangencyPoints { a1, a2: neg(a1), b1, b2: neg(b1), c1, c2: neg(c1), d1, d2: neg(d1) }
}

/// `ξ_cusp(α) = (5/2 − 3(√α + 1/√α)/4)^{1/2}` for α ≥ 1/9.
pub fn xi_cusp(alpha: &Alpha) -> Option<f64> {
    match Regime::of(alpha) {
        Regime::Low => None,
        Regime::Critical => Some(0.0),
        Regime::High => {
            if alpha.is_one() {
                return Some(1.0);
            }
            let sa = alpha.to_f64().sqrt();
            Some((2.5 - 0.75 * (sa + 1.0 / sa)).max(0.0).sqrt())
        }
    }
}

/// Cusps `±(ξ_cusp, ξ_cusp/2)` of the arctic curve, present for 1/9 < α < 1.
pub fn cusp_points(alpha: &Alpha) -> Vec<[f64; 2]> {
    match (Regime::of(alpha), xi_cusp(alpha)) {
        (Regime::High, Some(x)) if !alpha.is_one() => vec![[x, x / 2.0], [-x, -x / 2.0]],
        _ => Vec::new(),
    }
}

/// Liquid flags at the centers of a `resolution × resolution` grid of cells
/// covering `[−1, 1]²`. Cells outside 𝓗 are not liquid.
#[derive(Clone, Debug)]
pub struct LiquidGrid {
    pub resolution: usize,
    /// Row-major by η, then ξ.
    pub flags: Vec<bool>,
}

impl LiquidGrid {
    pub fn center(&self, i: usize, j: usize) -> ScaledPoint {
        let h = 2.0 / self.resolution as f64;
        ScaledPoint { xi: -1.0 + (i as f64 + 0.5) * h, eta: -1.0 + (j as f64 + 0.5) * h }
    }

    pub fn is_liquid(&self, i: usize, j: usize) -> bool {
        self.flags[j * self.resolution + i]
    }

    /// Number of 4-connected components of liquid cells.
    pub fn component_count(&self) -> usize {
        let n = self.resolution;
        let mut seen = vec![false; n * n];
        let mut count = 0;
        for start in 0..n * n {
            if !self.flags[start] || seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(k) = queue.pop_front() {
                let (i, j) = (k % n, k / n);
                let mut visit = |ii: usize, jj: usize| {
                    let m = jj * n + ii;
                    if self.flags[m] && !seen[m] {
                        seen[m] = true;
                        queue.push_back(m);
                    }
                };
                if i > 0 {
                    visit(i - 1, j);
                }
                if i + 1 < n {
                    visit(i + 1, j);
                }
                if j > 0 {
                    visit(i, j - 1);
                }
                if j + 1 < n {
                    visit(i, j + 1);
                }
            }
        }
        count
    }

    pub fn liquid_fraction(&self) -> f64 {
        self.flags.iter().filter(|f| **f).count() as f64 / self.flags.len() as f64
    }
}

pub fn liquid_grid(alpha: &Alpha, resolution: usize) -> LiquidGrid {
    let solver = SaddleSolver::new(alpha);
    let mut grid = LiquidGrid { resolution, flags: Vec::new() };
    grid.flags = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| solver.is_liquid(grid.center(k % resolution, k / resolution)))
        .collect();
    grid
}

/// Arctic curve as polylines in `(ξ, η)`, with its closed-form special points.
#[derive(Clone, Debug, Serialize)]
pub struct ArcticGeometry {
    pub alpha: String,
    pub regime: Regime,
    pub resolution: usize,
    pub boundary: Vec<Vec<[f64; 2]>>,
    pub tangency: TangencyPoints,
    pub cusps: Vec<[f64; 2]>,
}

impl ArcticGeometry {
    /// Euclidean distance from `p` to the traced curve.
    pub fn distance_to_boundary(&self, p: ScaledPoint) -> f64 {
        let mut best = f64::INFINITY;
        for line in &self.boundary {
            for w in line.windows(2) {
                best = best.min(segment_distance([p.xi, p.eta], w[0], w[1]));
            }
        }
        best
    }

    pub fn point_count(&self) -> usize {
        self.boundary.iter().map(Vec::len).sum()
    }
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0) };
    let q = [a[0] + t * d[0] - p[0], a[1] + t * d[1] - p[1]];
    q[0].hypot(q[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum EdgeKey {
    /// From node (i, j) to (i+1, j).
    H(usize, usize),
    /// From node (i, j) to (i, j+1).
    V(usize, usize),
}

/// Traces the boundary of the liquid region by marching squares on a
/// `(resolution+1)²` node grid. Each crossing is located by bisecting the
/// liquid indicator along its grid edge; ambiguous cells are resolved by the
/// cell center.
pub fn arctic_geometry(alpha: &Alpha, resolution: usize) -> ArcticGeometry {
    let resolution = resolution.max(2);
    let solver = SaddleSolver::new(alpha);
    let h = 2.0 / resolution as f64;
    let m = resolution + 1;
    let node = |i: usize, j: usize| ScaledPoint { xi: -1.0 + i as f64 * h, eta: -1.0 + j as f64 * h };
    let liquid: Vec<bool> = (0..m * m).into_par_iter().map(|k| solver.is_liquid(node(k % m, k / m))).collect();
    let at = |i: usize, j: usize| liquid[j * m + i];

    let mut segments: Vec<[EdgeKey; 2]> = Vec::new();
    for j in 0..resolution {
        for i in 0..resolution {
            let c = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            let edges = [EdgeKey::H(i, j), EdgeKey::V(i + 1, j), EdgeKey::H(i, j + 1), EdgeKey::V(i, j)];
            let crossing: Vec<usize> = (0..4).filter(|&e| c[e] != c[(e + 1) % 4]).collect();
            match crossing.len() {
                2 => segments.push([edges[crossing[0]], edges[crossing[1]]]),
                4 => {
                    let center = solver.is_liquid(ScaledPoint {
                        xi: -1.0 + (i as f64 + 0.5) * h,
                        eta: -1.0 + (j as f64 + 0.5) * h,
                    });
                    // Cut off each corner whose state differs from the center.
                    for k in 0..4 {
                        if c[k] != center {
                            segments.push([edges[(k + 3) % 4], edges[k]]);
                        }
                    }
                }
                _ => {}
            }
        }
    }

    let mut keys: Vec<EdgeKey> = segments.iter().flatten().copied().collect();
    keys.sort_by_key(|k| match *k {
        EdgeKey::H(i, j) => (0, i, j),
        EdgeKey::V(i, j) => (1, i, j),
    });
    keys.dedup();
    let points: HashMap<EdgeKey, [f64; 2]> = keys
        .par_iter()
        .map(|&key| {
            let (a, b) = match key {
                EdgeKey::H(i, j) => (node(i, j), node(i + 1, j)),
                EdgeKey::V(i, j) => (node(i, j), node(i, j + 1)),
            };
            (key, crossing_point(&solver, a, b))
        })
        .collect();

    let boundary = chain(&segments)
        .into_iter()
        .map(|line| line.iter().map(|k| points[k]).collect())
        .collect();
    ArcticGeometry {
        alpha: alpha.to_string(),
        regime: Regime::of(alpha),
        resolution,
        boundary,
        tangency: tangency_points(alpha),
        cusps: cusp_points(alpha),
    }
}

fn crossing_point(solver: &SaddleSolver, a: ScaledPoint, b: ScaledPoint) -> [f64; 2] {
    let la = solver.is_liquid(a);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let at = |t: f64| ScaledPoint { xi: a.xi + t * (b.xi - a.xi), eta: a.eta + t * (b.eta - a.eta) };
    for _ in 0..44 {
        let mid = 0.5 * (lo + hi);
        if solver.is_liquid(at(mid)) == la {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = at(0.5 * (lo + hi));
    [p.xi, p.eta]
}

/// Joins segments sharing an endpoint into polylines; closed curves repeat
/// their first point at the end.
fn chain(segments: &[[EdgeKey; 2]]) -> Vec<Vec<EdgeKey>> {
    let mut by_key: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (s, seg) in segments.iter().enumerate() {
        for k in seg {
            by_key.entry(*k).or_default().push(s);
        }
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut line = VecDeque::from(segments[start].to_vec());
        for forward in [true, false] {
            loop {
                let end = if forward { *line.back().expect("line is non-empty") } else { line[0] };
                let next = by_key[&end].iter().copied().find(|&s| !used[s]);
                let Some(s) = next else { break };
                used[s] = true;
                let seg = segments[s];
                let other = if seg[0] == end { seg[1] } else { seg[0] };
                if forward {
                    line.push_back(other);
                } else {
                    line.push_front(other);
                }
            }
        }
        lines.push(line.into_iter().collect());
    }
    lines
}
