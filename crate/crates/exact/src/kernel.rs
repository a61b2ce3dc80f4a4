use hexatile_lattice::{Alpha, Face, HexagonSpec, LozengeType};
use rug::Rational;

use crate::laurent::rational_pow;
use crate::{ortho_basis, ExactError, LaurentSeries, OrthoBasis};

/// Exact probabilities of the three lozenge types at one face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceProbabilities {
    pub face: Face,
    pub p: [Rational; 3],
}

impl FaceProbabilities {
    pub fn get(&self, t: LozengeType) -> &Rational {
        &self.p[t.index()]
    }
}

/// Exact correlation kernel for one (N, α).
///
/// `K_N(x1,y1,x2,y2) = −χ_{x1>x2} [z^{y1−y2}] (z+1)^{a1−a2} (z+α)^{b1−b2}
///   + Σ_{j,k} R_{jk} [w^{−1−j}] W(w)/F(w;x2,y2) · [z^{−1−k}] F(z;x1,y1)/z`
/// with `F(z;x,y) = (z+1)^{⌊x/2⌋} (z+α)^{⌊(x+1)/2⌋} / z^y`.
#[derive(Clone, Debug)]
pub struct ExactKernel {
    basis: OrthoBasis,
}

/// A function `H(w,z) = c · w^{w[0]} (w+1)^{w[1]} (w+α)^{w[2]} · z^{z[0]} (z+1)^{z[1]} (z+α)^{z[2]}`
/// for the double integral `𝓘_N(x,y;H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitH {
    pub scale: Rational,
    pub w: [i64; 3],
    pub z: [i64; 3],
}

impl SplitH {
    /// The H function whose integral gives the type I or II probability,
    /// or `1 − P(III)` for type III.
    pub fn lozenge(t: LozengeType, even: bool, alpha: &Rational) -> Self {
        let one = Rational::from(1);
        match (t, even) {
            (LozengeType::TypeI, true) => Self { scale: one, w: [1, 0, -1], z: [-1, 0, 0] },
            (LozengeType::TypeI, false) => Self { scale: one, w: [1, -1, 0], z: [-1, 0, 0] },
            (LozengeType::TypeII, true) => Self { scale: alpha.clone(), w: [0, 0, -1], z: [-1, 0, 0] },
            (LozengeType::TypeII, false) => Self { scale: one, w: [0, -1, 0], z: [-1, 0, 0] },
            (LozengeType::TypeIII, _) => Self { scale: one, w: [0; 3], z: [-1, 0, 0] },
        }
    }

    /// `H(z, w)`.
    pub fn swapped(&self) -> Self {
        Self { scale: self.scale.clone(), w: self.z, z: self.w }
    }

    /// Multiplies by `(w+α)/(w+1) · (z+1)/(z+α)`.
    pub fn odd_factor(&self) -> Self {
        let mut h = self.clone();
        h.w[1] -= 1;
        h.w[2] += 1;
        h.z[1] += 1;
        h.z[2] -= 1;
        h
    }

    /// `α/(wz) · H(α/w, α/z)`, using `α/w + 1 = (w+α)/w` and
    /// `α/w + α = α(w+1)/w`.
    pub fn inverted(&self, alpha: &Rational) -> Self {
        let side = |e: [i64; 3]| ([-e[0] - e[1] - e[2] - 1, e[2], e[1]], e[0] + e[2]);
        let (w, pw) = side(self.w);
        let (z, pz) = side(self.z);
        let scale = Rational::from(&self.scale * &rational_pow(alpha, pw + pz + 1));
        Self { scale, w, z }
    }
}

fn floor_half(x: i64) -> u32 {
    x.div_euclid(2) as u32
}

fn ceil_half(x: i64) -> u32 {
    (x + 1).div_euclid(2) as u32
}

impl ExactKernel {
    pub fn new(n: usize, alpha: &Alpha) -> Result<Self, ExactError> {
        Ok(Self { basis: ortho_basis(n, alpha)? })
    }

    pub fn from_basis(basis: OrthoBasis) -> Self {
        Self { basis }
    }

    pub fn basis(&self) -> &OrthoBasis {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    fn alpha(&self) -> &Rational {
        self.basis.alpha().exact()
    }

    fn check_column(&self, x: i64) -> Result<(), ExactError> {
        let max = 2 * self.n() as i64 - 1;
        if x < 1 || x > max {
            return Err(ExactError::ColumnRange { x, max });
        }
        Ok(())
    }

    fn check_face(&self, face: Face) -> Result<(), ExactError> {
        if !HexagonSpec::is_interior(self.n(), face) {
            return Err(ExactError::FaceRange { x: face.x, y: face.y });
        }
        Ok(())
    }

    /// `[z^{−1−k}]` of `c z^s (z+1)^e1 (z+α)^ea` for k = 0..N−1.
    fn coefficients(&self, scale: &Rational, e: [i64; 3], x: i64) -> Result<Vec<Rational>, ExactError> {
        if e[1] < 0 || e[2] < 0 {
            return Err(ExactError::Pole { x });
        }
        let poly = LaurentSeries::weight_factor(self.alpha(), e[1] as u32, e[2] as u32, e[0]);
        Ok((0..self.n() as i64).map(|k| Rational::from(&poly.coeff(-1 - k) * scale)).collect())
    }

    fn pair(&self, wv: &[Rational], zv: &[Rational]) -> Rational {
        let c = self.basis.cd().coeffs();
        let mut total = Rational::new();
        for (j, wj) in wv.iter().enumerate() {
            if *wj == 0 {
                continue;
            }
            let mut inner = Rational::new();
            for (k, zk) in zv.iter().enumerate() {
                if *zk != 0 {
                    inner += Rational::from(&c[j][k] * zk);
                }
            }
            total += inner * wj;
        }
        total
    }

    /// Exponents of `W(w)/F(w;x,y)` and `F(z;x,y)`.
    fn base_exponents(&self, x: i64, y: i64) -> ([i64; 3], [i64; 3]) {
        let n = self.n() as i64;
        let (a, b) = (i64::from(floor_half(x)), i64::from(ceil_half(x)));
        ([y - 2 * n, n - a, n - b], [-y, a, b])
    }

    /// `𝓘_N(x,y;H) = (2πi)^{−2} ∮∮ R_N(w,z) W(w) F(z;x,y)/F(w;x,y) H(w,z) dw dz`.
    pub fn integral(&self, x: i64, y: i64, h: &SplitH) -> Result<Rational, ExactError> {
        self.check_column(x)?;
        let (bw, bz) = self.base_exponents(x, y);
        let add = |a: [i64; 3], b: [i64; 3]| [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
        let wv = self.coefficients(&h.scale, add(bw, h.w), x)?;
        let zv = self.coefficients(&Rational::from(1), add(bz, h.z), x)?;
        Ok(self.pair(&wv, &zv))
    }

    pub fn kernel(&self, x1: i64, y1: i64, x2: i64, y2: i64) -> Result<Rational, ExactError> {
        self.check_column(x1)?;
        self.check_column(x2)?;
        let (bw, _) = self.base_exponents(x2, y2);
        let (_, bz) = self.base_exponents(x1, y1);
        let one = Rational::from(1);
        let mut value = self.pair(&self.coefficients(&one, bw, x2)?, &self.coefficients(&one, [bz[0] - 1, bz[1], bz[2]], x1)?);
        if x1 > x2 {
            let single = LaurentSeries::weight_factor(
                self.alpha(),
                floor_half(x1) - floor_half(x2),
                ceil_half(x1) - ceil_half(x2),
                0,
            );
            value -= single.coeff(y1 - y2);
        }
        Ok(value)
    }

    pub fn probability(&self, face: Face, t: LozengeType) -> Result<Rational, ExactError> {
        self.check_face(face)?;
        let v = self.integral(face.x, face.y, &SplitH::lozenge(t, face.is_even(), self.alpha()))?;
        Ok(match t {
            LozengeType::TypeIII => Rational::from(1) - v,
            _ => v,
        })
    }

    pub fn face_probabilities(&self, face: Face) -> Result<FaceProbabilities, ExactError> {
        let p = [
            self.probability(face, LozengeType::TypeI)?,
            self.probability(face, LozengeType::TypeII)?,
            self.probability(face, LozengeType::TypeIII)?,
        ];
        Ok(FaceProbabilities { face, p })
    }

    /// `E[h(x,y)] = Σ_{k<y} K_N(x,k,x,k)`.
    pub fn expected_height(&self, x: i64, y: i64) -> Result<Rational, ExactError> {
        self.check_column(x)?;
        let max = 2 * self.n() as i64;
        if y < 0 || y > max {
            return Err(ExactError::HeightRange { y, max });
        }
        let mut total = Rational::new();
        for k in 0..y {
            total += self.kernel(x, k, x, k)?;
        }
        Ok(total)
    }
}

pub fn kernel_k(n: usize, alpha: &Alpha, x1: i64, y1: i64, x2: i64, y2: i64) -> Result<Rational, ExactError> {
    ExactKernel::new(n, alpha)?.kernel(x1, y1, x2, y2)
}

pub fn lozenge_probability(n: usize, alpha: &Alpha, face: Face, t: LozengeType) -> Result<Rational, ExactError> {
    ExactKernel::new(n, alpha)?.probability(face, t)
}

pub fn expected_height(n: usize, alpha: &Alpha, x: i64, y: i64) -> Result<Rational, ExactError> {
    ExactKernel::new(n, alpha)?.expected_height(x, y)
}
