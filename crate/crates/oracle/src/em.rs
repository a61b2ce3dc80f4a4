use hexatile_lattice::Alpha;
use rug::Rational;

use crate::{inverse, OracleError, MAX_N};

/// Transfer matrix entry `T_m(u, v)`: a flat step weighs α at even m and 1
/// at odd m, an up step weighs 1.
pub fn transfer(m: usize, u: i64, v: i64, alpha: &Rational) -> Rational {
    match v - u {
        0 if m.is_multiple_of(2) => alpha.clone(),
        0 | 1 => Rational::from(1),
        _ => Rational::new(),
    }
}

type Matrix = Vec<Vec<Rational>>;

/// Correlation kernel of the path point process, built from the transfer
/// matrices and the boundary points `a_j = j`, `b_k = N + k`:
///
/// `K(x1,y1,x2,y2) = −χ_{x1>x2} φ_{x2,x1}(y2,y1)
///   + Σ_{k,l} φ_{x2,2N}(y2,b_k) (G^{−1})_{kl} φ_{0,x1}(a_l,y1)`
/// with `φ_{r,s} = T_r ⋯ T_{s−1}` and `G_{lk} = φ_{0,2N}(a_l,b_k)`.
/// Points are `(x, y)` with the path at height `y + 1/2` in column x.
#[derive(Clone, Debug)]
pub struct EynardMehtaKernel {
    n: usize,
    /// `phi[r][s]` over heights 0..=2N, for r ≤ s.
    phi: Vec<Vec<Matrix>>,
    ginv: Matrix,
}

pub fn eynard_mehta_kernel(n: usize, alpha: &Alpha) -> Result<EynardMehtaKernel, OracleError> {
    if n == 0 || n > MAX_N {
        return Err(OracleError::Size { n, max: MAX_N });
    }
    let h = 2 * n + 1;
    let a = alpha.exact();
    let identity: Matrix = (0..h).map(|i| (0..h).map(|j| Rational::from(u8::from(i == j))).collect()).collect();
    let mut phi = Vec::with_capacity(2 * n + 1);
    for r in 0..=2 * n {
        let mut row = vec![identity.clone()];
        for s in r..2 * n {
            let prev = row.last().unwrap();
            let next = (0..h)
                .map(|u| {
                    (0..h)
                        .map(|v| {
                            let mut acc = Rational::new();
                            for w in v.saturating_sub(1)..=v {
                                acc += Rational::from(&prev[u][w] * &transfer(s, w as i64, v as i64, a));
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            row.push(next);
        }
        phi.push(row);
    }
    let g: Matrix = (0..n).map(|l| (0..n).map(|k| phi[0][2 * n][l][n + k].clone()).collect()).collect();
    let ginv = inverse(&g).ok_or(OracleError::Singular)?;
    Ok(EynardMehtaKernel { n, phi, ginv })
}

impl EynardMehtaKernel {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `φ_{r,s}(u, v)`, zero when r > s or heights leave 0..=2N.
    pub fn phi(&self, r: usize, s: usize, u: i64, v: i64) -> Rational {
        let h = 2 * self.n as i64;
        if r > s || s > 2 * self.n || !(0..=h).contains(&u) || !(0..=h).contains(&v) {
            return Rational::new();
        }
        self.phi[r][s - r][u as usize][v as usize].clone()
    }

    /// Kernel for columns 0..=2N.
    pub fn kernel(&self, x1: i64, y1: i64, x2: i64, y2: i64) -> Rational {
        let n = self.n;
        let top = 2 * n as i64;
        if !(0..=top).contains(&x1) || !(0..=top).contains(&x2) {
            return Rational::new();
        }
        let (x1u, x2u) = (x1 as usize, x2 as usize);
        let mut total = Rational::new();
        for k in 0..n {
            let left = self.phi(x2u, 2 * n, y2, (n + k) as i64);
            if left == 0 {
                continue;
            }
            let mut inner = Rational::new();
            for l in 0..n {
                inner += Rational::from(&self.ginv[k][l] * &self.phi(0, x1u, l as i64, y1));
            }
            total += inner * left;
        }
        if x1 > x2 {
            total -= self.phi(x2u, x1u, y2, y1);
        }
        total
    }

    /// `det[K(p_i, p_j)]` for distinct points `(x, y)`.
    pub fn correlation(&self, points: &[(i64, i64)]) -> Rational {
        let m: Matrix = points
            .iter()
            .map(|&(x1, y1)| points.iter().map(|&(x2, y2)| self.kernel(x1, y1, x2, y2)).collect())
            .collect();
        crate::determinant(&m)
    }

    /// Every point `(x, y)` with x in 0..=2N and y in 0..2N.
    pub fn points(&self) -> Vec<(i64, i64)> {
        let n = self.n as i64;
        (0..=2 * n).flat_map(|x| (0..2 * n).map(move |y| (x, y))).collect()
    }

    /// The full table over [`Self::points`].
    pub fn table(&self) -> Vec<((i64, i64, i64, i64), Rational)> {
        let pts = self.points();
        let mut out = Vec::with_capacity(pts.len() * pts.len());
        for &(x1, y1) in &pts {
            for &(x2, y2) in &pts {
                out.push(((x1, y1, x2, y2), self.kernel(x1, y1, x2, y2)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_hexagon() {
        let alpha = Alpha::ratio(1, 3).unwrap();
        let k = eynard_mehta_kernel(1, &alpha).unwrap();
        assert_eq!(k.kernel(1, 0, 1, 0), Rational::from((1, 4)));
        assert_eq!(k.kernel(1, 1, 1, 1), Rational::from((3, 4)));
        assert_eq!(k.kernel(0, 0, 0, 0), 1);
        assert_eq!(k.kernel(2, 1, 2, 1), 1);
    }

    #[test]
    fn columns_hold_n_particles() {
        let alpha = Alpha::ratio(1, 4).unwrap();
        for n in 1..=3 {
            let k = eynard_mehta_kernel(n, &alpha).unwrap();
            for x in 0..=2 * n as i64 {
                let mut s = Rational::new();
                for y in 0..2 * n as i64 {
                    s += k.kernel(x, y, x, y);
                }
                assert_eq!(s, n as i64);
            }
        }
    }

    #[test]
    fn size_limit() {
        assert!(eynard_mehta_kernel(5, &Alpha::one()).is_err());
        assert!(eynard_mehta_kernel(0, &Alpha::one()).is_err());
    }
}
