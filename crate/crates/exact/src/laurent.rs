use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Assign, Integer, Rational};

/// Finite Laurent polynomial `Σ coeffs[i] z^{lo + i}` with exact rational
/// coefficients. The zero series has no coefficients; otherwise the first and
/// last coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    lo: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    pub fn new(lo: i64, coeffs: Vec<Rational>) -> Self {
        let mut s = Self { lo, coeffs };
        s.normalize();
        s
    }

    pub fn zero() -> Self {
        Self { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::from(1))
    }

    pub fn monomial(k: i64, c: Rational) -> Self {
        Self::new(k, vec![c])
    }

    /// `(z + c)^n`.
    pub fn binomial(c: &Rational, n: u32) -> Self {
        let mut coeffs = Vec::with_capacity(n as usize + 1);
        let mut power = Rational::from(1);
        let mut pows = Vec::with_capacity(n as usize + 1);
        for _ in 0..=n {
            pows.push(power.clone());
            power *= c;
        }
        for k in 0..=n {
            let b = Integer::from(Integer::binomial_u(n, k));
            coeffs.push(Rational::from(b) * &pows[(n - k) as usize]);
        }
        Self::new(0, coeffs)
    }

    /// `(z+1)^a (z+α)^b z^shift`.
    pub fn weight_factor(alpha: &Rational, a: u32, b: u32, shift: i64) -> Self {
        let one = Rational::from(1);
        (&Self::binomial(&one, a) * &Self::binomial(alpha, b)).shifted(shift)
    }

    fn normalize(&mut self) {
        let trailing = self.coeffs.iter().rev().take_while(|c| **c == 0).count();
        self.coeffs.truncate(self.coeffs.len() - trailing);
        let leading = self.coeffs.iter().take_while(|c| **c == 0).count();
        if leading == self.coeffs.len() {
            self.coeffs.clear();
            self.lo = 0;
        } else if leading > 0 {
            self.coeffs.drain(..leading);
            self.lo += leading as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero series).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Rational {
        let i = k - self.lo;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Rational::new()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// `(1/2πi)∮ f(z) dz` around the origin.
    pub fn residue(&self) -> Rational {
        self.coeff(-1)
    }

    /// Multiply by `z^k`.
    pub fn shifted(mut self, k: i64) -> Self {
        if !self.is_zero() {
            self.lo += k;
        }
        self
    }

    pub fn scaled(mut self, c: &Rational) -> Self {
        for x in &mut self.coeffs {
            *x *= c;
        }
        self.normalize();
        self
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitute `z → c/z`.
    pub fn invert_argument(&self, c: &Rational) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, x) in self.coeffs.iter().enumerate().rev() {
            let k = self.lo + i as i64;
            coeffs.push(Rational::from(x * &rational_pow(c, k)));
        }
        Self::new(-self.hi(), coeffs)
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::new();
        for x in self.coeffs.iter().rev() {
            acc *= z;
            acc += x;
        }
        acc * rational_pow(z, self.lo)
    }
}

/// `c^k` for any integer k (c ≠ 0 when k < 0).
pub fn rational_pow(c: &Rational, k: i64) -> Rational {
    let mut r = Rational::from(1);
    for _ in 0..k.unsigned_abs() {
        r *= c;
    }
    if k < 0 {
        r.recip_mut();
    }
    r
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;

    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        LaurentSeries::new(lo, coeffs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        LaurentSeries { lo: self.lo, coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;

    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;

    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero();
        }
        let mut coeffs = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        let mut tmp = Rational::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                tmp.assign(a * b);
                coeffs[i + j] += &tmp;
            }
        }
        LaurentSeries::new(self.lo + rhs.lo, coeffs)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| format!("({c}) z^{}", self.lo + i as i64))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
