use hexatile_lattice::Alpha;
use rug::{Integer, Rational};

use crate::laurent::rational_pow;
use crate::LaurentSeries;

/// Weighted number of single paths rising `dy` over `even` even-column steps
/// (flat weight α) and `odd` odd-column steps (flat weight 1): the coefficient
/// of `z^dy` in `(z+1)^odd (z+α)^even`.
pub fn lgv_weight(alpha: &Rational, even: u32, odd: u32, dy: i64) -> Rational {
    if dy < 0 || dy > (even + odd) as i64 {
        return Rational::new();
    }
    let dy = dy as u32;
    let mut total = Rational::new();
    for l in dy.saturating_sub(even)..=dy.min(odd) {
        let ups_even = dy - l;
        let c = Integer::from(Integer::binomial_u(odd, l)) * Integer::from(Integer::binomial_u(even, ups_even));
        total += Rational::from(c) * rational_pow(alpha, (even - ups_even) as i64);
    }
    total
}

/// Even and odd column steps among columns `from..to`.
pub fn step_counts(from: usize, to: usize) -> (u32, u32) {
    let even = (from..to).filter(|m| m % 2 == 0).count() as u32;
    (even, (to - from) as u32 - even)
}

/// Moments `m_k = ⟨1, z^k⟩`, i.e. the coefficient of `z^{2N−1−k}` in
/// `(z+1)^N (z+α)^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    n: usize,
    m: Vec<Rational>,
}

impl MomentTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `m_k`, zero outside 0..=2N−1.
    pub fn get(&self, k: i64) -> Rational {
        if k < 0 || k >= self.m.len() as i64 {
            Rational::new()
        } else {
            self.m[k as usize].clone()
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.m
    }

    /// Hankel matrix `[m_{j+k}]` of size `size`.
    pub fn hankel(&self, size: usize) -> Vec<Vec<Rational>> {
        (0..size).map(|j| (0..size).map(|k| self.get((j + k) as i64)).collect()).collect()
    }
}

pub fn moments(n: usize, alpha: &Alpha) -> MomentTable {
    let poly = LaurentSeries::weight_factor(alpha.exact(), n as u32, n as u32, 0);
    let top = 2 * n as i64 - 1;
    let m = (0..2 * n as i64).map(|k| poly.coeff(top - k)).collect();
    MomentTable { n, m }
}
