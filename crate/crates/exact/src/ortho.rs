use hexatile_lattice::Alpha;
use rug::{Integer, Rational};

use crate::{moments, Bivariate, ExactError, LaurentSeries, MomentTable};

/// Monic orthogonal polynomials `p_0..p_D`, their norms `κ_n = ⟨p_n, p_n⟩`,
/// the Hankel determinants `det M_1..det M_{D+1}` and the kernel
/// `R_N(w,z) = Σ_{n<N} p_n(w) p_n(z) / κ_n`.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    n: usize,
    alpha: Alpha,
    moments: MomentTable,
    polys: Vec<Vec<Rational>>,
    kappas: Vec<Rational>,
    hankel_dets: Vec<Rational>,
    cd: Bivariate,
}

/// Basis with polynomials up to degree N.
pub fn ortho_basis(n: usize, alpha: &Alpha) -> Result<OrthoBasis, ExactError> {
    OrthoBasis::with_degree(n, alpha, n)
}

impl OrthoBasis {
    /// Polynomials up to `degree` (at most 2N, the range where the moment
    /// matrices are invertible).
    pub fn with_degree(n: usize, alpha: &Alpha, degree: usize) -> Result<Self, ExactError> {
        assert!(n >= 1 && degree >= n && degree <= 2 * n, "degree must lie in N..=2N");
        let moments = moments(n, alpha);
        let (polys, kappas, hankel_dets) = eliminate(&moments, degree + 1)?;
        let cd = Bivariate::sum_of_products(&polys[..n], &polys[..n], &kappas[..n]);
        Ok(Self { n, alpha: alpha.clone(), moments, polys, kappas, hankel_dets, cd })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    pub fn moments(&self) -> &MomentTable {
        &self.moments
    }

    /// Ascending coefficients of `p_k`.
    pub fn poly(&self, k: usize) -> &[Rational] {
        &self.polys[k]
    }

    pub fn polys(&self) -> &[Vec<Rational>] {
        &self.polys
    }

    pub fn kappa(&self, k: usize) -> &Rational {
        &self.kappas[k]
    }

    pub fn kappas(&self) -> &[Rational] {
        &self.kappas
    }

    /// `det M_k` for k = 1..=D+1 (index k−1).
    pub fn hankel_dets(&self) -> &[Rational] {
        &self.hankel_dets
    }

    /// Determinants of the path-weight matrices `W_k = [w(A_j, B_l)]`, which
    /// are `M_k` with the column order reversed.
    pub fn lgv_dets(&self) -> Vec<Rational> {
        self.hankel_dets
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let k = i + 1;
                if (k * (k - 1) / 2) % 2 == 0 {
                    d.clone()
                } else {
                    Rational::from(-d)
                }
            })
            .collect()
    }

    /// Coefficients of `R_N` as the sum over `p_n p_n / κ_n`.
    pub fn cd(&self) -> &Bivariate {
        &self.cd
    }

    /// `R_N` from the Christoffel–Darboux divided difference
    /// `κ_{N−1}^{−1} (p_N(z) p_{N−1}(w) − p_N(w) p_{N−1}(z)) / (z − w)`.
    pub fn cd_divided_difference(&self) -> Bivariate {
        let n = self.n;
        let inv = Rational::from(self.kappas[n - 1].recip_ref());
        Bivariate::divided_difference(&self.polys[n], &self.polys[n - 1]).scaled(&inv)
    }

    /// Recurrence `z p_n = p_{n+1} + b_n p_n + a_n p_{n−1}`: returns
    /// `(b_0..b_{D−1}, a_1..a_{D−1})` with `a` indexed from n = 1.
    pub fn recurrence(&self) -> (Vec<Rational>, Vec<Rational>) {
        let d = self.polys.len() - 1;
        let b = (0..d)
            .map(|n| {
                let below = if n == 0 { Rational::new() } else { self.polys[n][n - 1].clone() };
                below - &self.polys[n + 1][n]
            })
            .collect();
        let a = (1..d).map(|n| Rational::from(&self.kappas[n] / &self.kappas[n - 1])).collect();
        (b, a)
    }

    /// The weight `(z+1)^N (z+α)^N / z^{2N}` as a Laurent series.
    pub fn weight(&self) -> LaurentSeries {
        let n = self.n as u32;
        LaurentSeries::weight_factor(self.alpha.exact(), n, n, -2 * self.n as i64)
    }

    /// `⟨f, g⟩` by residue.
    pub fn pairing(&self, f: &LaurentSeries, g: &LaurentSeries) -> Rational {
        (&(f * g) * &self.weight()).residue()
    }

    /// `(1/2πi)∮ R_N(w,z) q(z) W(z) dz` as coefficients in `w`, for
    /// `q = z^degree`. Equals the coefficients of `w^degree` when
    /// `degree < N`.
    pub fn reproduce_monomial(&self, degree: usize) -> Vec<Rational> {
        let weight = self.weight();
        let pair: Vec<Rational> = (0..self.n)
            .map(|k| weight.coeff(-1 - (k + degree) as i64))
            .collect();
        (0..self.n)
            .map(|j| {
                let mut acc = Rational::new();
                for (k, p) in pair.iter().enumerate() {
                    acc += Rational::from(&self.cd.coeffs()[j][k] * p);
                }
                acc
            })
            .collect()
    }

    /// Checks `R_N(α/w, α/z) = α^{N−1} (wz)^{1−N} R_N(w,z)` by comparing all
    /// coefficients after the literal substitution.
    pub fn cd_inversion_symmetric(&self) -> bool {
        let a = self.alpha.exact();
        let n = self.n as i64;
        let scale = crate::laurent::rational_pow(a, n - 1);
        // Both sides as maps (w exponent, z exponent) -> coefficient.
        let mut lhs = std::collections::BTreeMap::new();
        let mut rhs = std::collections::BTreeMap::new();
        for (j, row) in self.cd.coeffs().iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let sub = Rational::from(c * &crate::laurent::rational_pow(a, (j + k) as i64));
                lhs.insert((-(j as i64), -(k as i64)), sub);
                rhs.insert((j as i64 + 1 - n, k as i64 + 1 - n), Rational::from(c * &scale));
            }
        }
        lhs == rhs
    }
}

type Elimination = (Vec<Vec<Rational>>, Vec<Rational>, Vec<Rational>);

/// Fraction-free elimination of `[M_K | I]` without pivoting. Row i of the
/// eliminated identity block holds the coefficients of p_i scaled by
/// `det M_i`; the pivots are the leading Hankel minors.
fn eliminate(moments: &MomentTable, size: usize) -> Result<Elimination, ExactError> {
    // Scale moments to integers; p_n does not change, κ_n and the
    // determinants are rescaled at the end.
    let denom = moments.values().iter().fold(Integer::from(1), |acc, m| acc.lcm(m.denom()));
    let width = 2 * size;
    let mut a: Vec<Vec<Integer>> = (0..size)
        .map(|j| {
            let mut row: Vec<Integer> = (0..size)
                .map(|k| {
                    let m = moments.get((j + k) as i64) * Rational::from(denom.clone());
                    m.into_numer_denom().0
                })
                .collect();
            row.extend((0..size).map(|k| Integer::from(u8::from(k == j))));
            row
        })
        .collect();
    let mut prev = Integer::from(1);
    for k in 0..size - 1 {
        let pivot = a[k][k].clone();
        if pivot == 0 {
            return Err(ExactError::Singular(k + 1));
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for c in 0..width {
                let mut v = Integer::from(&pivot * &row[c]);
                v -= Integer::from(&factor * &pivot_row[c]);
                v.div_exact_mut(&prev);
                row[c] = v;
            }
        }
        prev = pivot;
    }
    let scale = Rational::from(denom);
    let mut polys = Vec::with_capacity(size);
    let mut kappas = Vec::with_capacity(size);
    let mut dets = Vec::with_capacity(size);
    let mut scale_pow = Rational::from(1);
    for (i, row) in a.iter().enumerate() {
        let lead = &row[size + i];
        polys.push((0..=i).map(|j| Rational::from((row[size + j].clone(), lead.clone()))).collect());
        scale_pow *= &scale;
        let det = Rational::from(row[i].clone()) / &scale_pow;
        kappas.push(Rational::from((row[i].clone(), lead.clone())) / &scale);
        dets.push(det);
    }
    Ok((polys, kappas, dets))
}
