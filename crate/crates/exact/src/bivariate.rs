use rug::Rational;

/// Polynomial `Σ c[j][k] w^j z^k` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivariate {
    c: Vec<Vec<Rational>>,
}

impl Bivariate {
    pub fn zeros(deg_w: usize, deg_z: usize) -> Self {
        Self { c: vec![vec![Rational::new(); deg_z + 1]; deg_w + 1] }
    }

    pub fn from_coeffs(c: Vec<Vec<Rational>>) -> Self {
        Self { c }
    }

    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.c
    }

    /// Coefficient of `w^j z^k`, zero outside the stored block.
    pub fn coeff(&self, j: usize, k: usize) -> Rational {
        self.c.get(j).and_then(|row| row.get(k)).cloned().unwrap_or_default()
    }

    pub fn deg_w(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg_z(&self) -> usize {
        self.c.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    /// `Σ_n f_n(w) g_n(z) / d_n` for univariate coefficient lists.
    pub fn sum_of_products(fs: &[Vec<Rational>], gs: &[Vec<Rational>], ds: &[Rational]) -> Self {
        let deg_w = fs.iter().map(|f| f.len()).max().unwrap_or(1).saturating_sub(1);
        let deg_z = gs.iter().map(|g| g.len()).max().unwrap_or(1).saturating_sub(1);
        let mut out = Self::zeros(deg_w, deg_z);
        for ((f, g), d) in fs.iter().zip(gs).zip(ds) {
            for (j, fj) in f.iter().enumerate() {
                if *fj == 0 {
                    continue;
                }
                let fd = Rational::from(fj / d);
                for (k, gk) in g.iter().enumerate() {
                    out.c[j][k] += Rational::from(&fd * gk);
                }
            }
        }
        out
    }

    /// `(f(z) g(w) − f(w) g(z)) / (z − w)`, divided exactly, for univariate
    /// `f` and `g` given by ascending coefficients.
    pub fn divided_difference(f: &[Rational], g: &[Rational]) -> Self {
        let deg = f.len().max(g.len()).saturating_sub(2);
        let mut out = Self::zeros(deg, deg);
        // (z^i w^l − w^i z^l)/(z − w) = Σ_{t < i−l} w^{i−1−t} z^{l+t} for i > l,
        // and the negated mirror for i < l.
        for (i, fi) in f.iter().enumerate() {
            for (l, gl) in g.iter().enumerate() {
                if i == l || *fi == 0 || *gl == 0 {
                    continue;
                }
                let c = Rational::from(fi * gl);
                let (hi, lo) = (i.max(l), i.min(l));
                for t in 0..hi - lo {
                    let cell = &mut out.c[hi - 1 - t][lo + t];
                    if i > l {
                        *cell += &c;
                    } else {
                        *cell -= &c;
                    }
                }
            }
        }
        out
    }

    pub fn scaled(mut self, s: &Rational) -> Self {
        for row in &mut self.c {
            for x in row {
                *x *= s;
            }
        }
        self
    }

    pub fn transpose(&self) -> Self {
        let (dw, dz) = (self.deg_w(), self.deg_z());
        let mut out = Self::zeros(dz, dw);
        for j in 0..=dw {
            for k in 0..=dz {
                out.c[k][j] = self.c[j][k].clone();
            }
        }
        out
    }

    pub fn eval(&self, w: &Rational, z: &Rational) -> Rational {
        let mut acc = Rational::new();
        for row in self.c.iter().rev() {
            let mut inner = Rational::new();
            for x in row.iter().rev() {
                inner *= z;
                inner += x;
            }
            acc *= w;
            acc += inner;
        }
        acc
    }
}
