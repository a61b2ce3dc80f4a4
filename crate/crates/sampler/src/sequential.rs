use hexatile_exact::{lgv_weight, step_counts};
use hexatile_lattice::PathSystem;
use rand::RngCore;

use crate::arith::Arith;
use crate::SamplerError;

/// Completion weights `φ_{m,2N}(u, u + d)` for every column m and rise d,
/// converted once into the working arithmetic.
pub(crate) struct Completion<A: Arith> {
    n: usize,
    /// `table[m][d]`.
    table: Vec<Vec<A::T>>,
    /// Weight of a flat step leaving column m.
    flat: Vec<A::T>,
}

impl<A: Arith> Completion<A> {
    pub(crate) fn new(arith: &A, n: usize, alpha: &rug::Rational) -> Self {
        let table = (0..=2 * n)
            .map(|m| {
                let (even, odd) = step_counts(m, 2 * n);
                (0..=2 * n - m).map(|d| arith.from_q(&lgv_weight(alpha, even, odd, d as i64))).collect()
            })
            .collect();
        let one = rug::Rational::from(1);
        let flat = (0..2 * n).map(|m| arith.from_q(if m % 2 == 0 { alpha } else { &one })).collect();
        Self { n, table, flat }
    }

    /// Row `[φ_{m,2N}(u, N + k)]_k`.
    fn row(&self, arith: &A, m: usize, u: i64) -> Vec<A::T> {
        let n = self.n as i64;
        (0..n)
            .map(|k| {
                let d = n + k - u;
                if d < 0 || d as usize >= self.table[m].len() {
                    arith.zero()
                } else {
                    self.table[m][d as usize].clone()
                }
            })
            .collect()
    }
}

/// Columns between fresh inversions in floating point; in between the
/// inverse is carried along by rank-one updates.
const REFRESH: usize = 16;

/// One draw by marching through the columns. Given the positions `x` at
/// column m, the next positions have law
/// `∏ T_m(x_i, y_i) · det[φ_{m+1,2N}(y_i, N+k)] / det[φ_{m,2N}(x_i, N+k)]`.
/// Particles are chosen from the top down; each conditional is a ratio of
/// determinants differing in one row, read off the inverse, which is then
/// updated by Sherman–Morrison. After the last particle the rows are
/// `t_i φ_{m+1,2N}(y_i, ·)`, so the next column's inverse is the current
/// one with column i scaled by the step weight `t_i`.
pub(crate) fn draw<A: Arith, R: RngCore>(
    arith: &A,
    comp: &Completion<A>,
    refresh: bool,
    rng: &mut R,
) -> Result<PathSystem, SamplerError> {
    let n = comp.n;
    let mut heights = vec![vec![0i64; 2 * n + 1]; n];
    let mut x: Vec<i64> = (0..n as i64).collect();
    for (j, row) in heights.iter_mut().enumerate() {
        row[0] = x[j];
    }
    let one = arith.from_q(&rug::Rational::from(1));
    let mut inv = Vec::new();
    for m in 0..2 * n {
        let left = (2 * n - m - 1) as i64;
        let summed: Vec<Vec<A::T>> = x.iter().map(|&u| comp.row(arith, m, u)).collect();
        if m == 0 || (refresh && m % REFRESH == 0) {
            inv = arith.inverse(&summed).ok_or(SamplerError::Singular { column: m })?;
        }
        let mut y = x.clone();
        let mut weights = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let up_ok = (i + 1 == n || x[i] + 1 < y[i + 1]) && x[i] < (n + i) as i64;
            let flat_ok = x[i] + left >= (n + i) as i64;
            let col: Vec<A::T> = inv.iter().map(|r| r[i].clone()).collect();
            let up_row = comp.row(arith, m + 1, x[i] + 1);
            let go_up = match (up_ok, flat_ok) {
                (true, true) => arith.below(&arith.dot(&up_row, &col), rng.next_u64()),
                (true, false) => true,
                (false, true) => false,
                (false, false) => return Err(SamplerError::Singular { column: m }),
            };
            let (chosen, t) = if go_up {
                (up_row, one.clone())
            } else {
                let t = comp.flat[m].clone();
                (comp.row(arith, m + 1, x[i]).iter().map(|v| arith.mul(v, &t)).collect(), t)
            };
            y[i] = x[i] + i64::from(go_up);
            weights.push(t);
            // Replace row i of the matrix by `chosen` and update its inverse.
            let rho = arith.dot(&chosen, &col);
            let delta: Vec<A::T> = chosen.iter().zip(&summed[i]).map(|(c, s)| arith.sub(c, s)).collect();
            let v: Vec<A::T> = (0..n)
                .map(|b| {
                    let mut acc = arith.zero();
                    for (a, d) in delta.iter().enumerate() {
                        arith.add_mul(&mut acc, d, &inv[a][b]);
                    }
                    arith.div(&acc, &rho)
                })
                .collect();
            for (a, row) in inv.iter_mut().enumerate() {
                for (b, entry) in row.iter_mut().enumerate() {
                    arith.sub_mul(entry, &col[a], &v[b]);
                }
            }
        }
        weights.reverse();
        for row in inv.iter_mut() {
            for (entry, t) in row.iter_mut().zip(&weights) {
                arith.scale(entry, t);
            }
        }
        x = y;
        for (j, row) in heights.iter_mut().enumerate() {
            row[m + 1] = x[j];
        }
    }
    PathSystem::new(heights).map_err(|e| SamplerError::Invalid(e.to_string()))
}
