use rug::{Float, Rational};

/// Field operations for the sampler's linear algebra.
pub(crate) trait Arith: Sync {
    type T: Clone + Send;

    fn from_q(&self, q: &Rational) -> Self::T;
    fn zero(&self) -> Self::T;
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn div(&self, a: &Self::T, b: &Self::T) -> Self::T;
    /// Size used for pivot selection.
    fn magnitude(&self, a: &Self::T) -> f64;
    /// Whether `u / 2^64 < p`.
    fn below(&self, p: &Self::T, u: u64) -> bool;

    /// `acc += a b`.
    fn add_mul(&self, acc: &mut Self::T, a: &Self::T, b: &Self::T);
    /// `acc -= a b`.
    fn sub_mul(&self, acc: &mut Self::T, a: &Self::T, b: &Self::T);
    /// `a *= b`.
    fn scale(&self, a: &mut Self::T, b: &Self::T);

    fn dot(&self, a: &[Self::T], b: &[Self::T]) -> Self::T {
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            self.add_mul(&mut acc, x, y);
        }
        acc
    }

    /// Gauss–Jordan inverse with scaled partial pivoting: the pivot
    /// maximises |a_rk| relative to the largest entry of row r.
    fn inverse(&self, m: &[Vec<Self::T>]) -> Option<Vec<Vec<Self::T>>> {
        let n = m.len();
        let mut a: Vec<Vec<Self::T>> = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { self.from_q(&Rational::from(1)) } else { self.zero() }));
                r
            })
            .collect();
        for k in 0..n {
            let scale = |row: &[Self::T]| row[..n].iter().map(|x| self.magnitude(x)).fold(0.0, f64::max);
            let p = (k..n)
                .filter(|&r| self.magnitude(&a[r][k]) > 0.0)
                .max_by(|&r, &s| {
                    let fr = self.magnitude(&a[r][k]) / scale(&a[r]);
                    let fs = self.magnitude(&a[s][k]) / scale(&a[s]);
                    fr.total_cmp(&fs)
                })?;
            a.swap(p, k);
            let pivot = self.div(&self.from_q(&Rational::from(1)), &a[k][k]);
            for x in a[k].iter_mut() {
                self.scale(x, &pivot);
            }
            let prow = a[k].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == k || self.magnitude(&row[k]) == 0.0 {
                    continue;
                }
                let f = row[k].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    self.sub_mul(x, &f, p);
                }
            }
        }
        Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }
}

pub(crate) struct ExactArith;

impl Arith for ExactArith {
    type T = Rational;

    fn from_q(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn zero(&self) -> Rational {
        Rational::new()
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a - b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a * b)
    }
    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a / b)
    }
    fn add_mul(&self, acc: &mut Rational, a: &Rational, b: &Rational) {
        *acc += Rational::from(a * b);
    }
    fn sub_mul(&self, acc: &mut Rational, a: &Rational, b: &Rational) {
        *acc -= Rational::from(a * b);
    }
    fn scale(&self, a: &mut Rational, b: &Rational) {
        *a *= b;
    }
    fn magnitude(&self, a: &Rational) -> f64 {
        // Any nonzero pivot is exact; prefer small denominators cheaply.
        if *a == 0 {
            0.0
        } else {
            1.0
        }
    }
    fn below(&self, p: &Rational, u: u64) -> bool {
        let u = Rational::from((rug::Integer::from(u), rug::Integer::from(1) << 64u32));
        u < *p
    }
}

pub(crate) struct F64Arith;

impl Arith for F64Arith {
    type T = f64;

    fn from_q(&self, q: &Rational) -> f64 {
        q.to_f64()
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn div(&self, a: &f64, b: &f64) -> f64 {
        a / b
    }
    fn add_mul(&self, acc: &mut f64, a: &f64, b: &f64) {
        *acc = a.mul_add(*b, *acc);
    }
    fn sub_mul(&self, acc: &mut f64, a: &f64, b: &f64) {
        *acc = (-a).mul_add(*b, *acc);
    }
    fn scale(&self, a: &mut f64, b: &f64) {
        *a *= b;
    }
    fn magnitude(&self, a: &f64) -> f64 {
        a.abs()
    }
    fn below(&self, p: &f64, u: u64) -> bool {
        ((u >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < *p
    }
}

/// Binary floating point with a fixed mantissa length and an exponent
/// range wide enough that no row rescaling is needed.
pub(crate) struct MpArith {
    pub prec: u32,
}

impl Arith for MpArith {
    type T = Float;

    fn from_q(&self, q: &Rational) -> Float {
        Float::with_val(self.prec, q)
    }
    fn zero(&self) -> Float {
        Float::new(self.prec)
    }
    fn sub(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a - b)
    }
    fn mul(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a * b)
    }
    fn div(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a / b)
    }
    fn add_mul(&self, acc: &mut Float, a: &Float, b: &Float) {
        *acc += a * b;
    }
    fn sub_mul(&self, acc: &mut Float, a: &Float, b: &Float) {
        *acc -= a * b;
    }
    fn scale(&self, a: &mut Float, b: &Float) {
        *a *= b;
    }
    fn magnitude(&self, a: &Float) -> f64 {
        // Entries stay far inside the f64 range for the sizes in use.
        a.to_f64().abs()
    }
    fn below(&self, p: &Float, u: u64) -> bool {
        let u = Float::with_val(64, u) >> 64u32;
        u < *p
    }
}
