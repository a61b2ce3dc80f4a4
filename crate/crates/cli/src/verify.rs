//! Oracle suite: the residue kernel against the Eynard–Mehta kernel and
//! brute-force enumeration, in exact arithmetic.

use hexatile_exact::{lgv_weight, ortho_basis, step_counts, ExactKernel};
use hexatile_lattice::{Alpha, HexagonSpec};
use hexatile_oracle::{determinant, enumerate, eynard_mehta_kernel};
use rayon::prelude::*;
use rug::Rational;

/// Largest N the suite accepts; enumeration grows too fast beyond it.
pub const MAX_N: usize = 4;

pub const ALPHAS: [(i64, i64); 4] = [(1, 16), (1, 9), (1, 4), (1, 1)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub n: usize,
    pub alpha: String,
    pub name: &'static str,
    /// Number of exact equalities tested.
    pub compared: usize,
    pub failures: usize,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs every check for N = 1..=max_n and each α of [`ALPHAS`].
pub fn run_suite(max_n: usize) -> Vec<Check> {
    let cases: Vec<(usize, (i64, i64))> = (1..=max_n).flat_map(|n| ALPHAS.map(|a| (n, a))).collect();
    cases.into_par_iter().flat_map_iter(|(n, (p, q))| checks(n, &Alpha::ratio(p, q).expect("valid α"))).collect()
}

fn checks(n: usize, alpha: &Alpha) -> Vec<Check> {
    let label = alpha.to_string();
    let check = |name, compared, failures| Check { n, alpha: label.clone(), name, compared, failures };
    let (Ok(ex), Ok(em), Ok(en)) = (ExactKernel::new(n, alpha), eynard_mehta_kernel(n, alpha), enumerate(n, alpha)) else {
        return vec![check("construction", 1, 1)];
    };
    let ni = n as i64;
    let mut out = Vec::new();

    let (mut compared, mut failures) = (0, 0);
    for x1 in 1..2 * ni {
        for x2 in 1..2 * ni {
            for y1 in 0..2 * ni {
                for y2 in 0..2 * ni {
                    compared += 1;
                    if ex.kernel(x1, y1, x2, y2).ok().as_ref() != Some(&em.kernel(x1, y1, x2, y2)) {
                        failures += 1;
                    }
                }
            }
        }
    }
    out.push(check("kernel residue = EM", compared, failures));

    let (mut compared, mut failures) = (0, 0);
    for face in HexagonSpec::interior_faces(n) {
        compared += 1;
        match ex.face_probabilities(face) {
            Ok(p) if p.p == en.face_marginal(face) => {}
            _ => failures += 1,
        }
    }
    out.push(check("marginals residue = enumeration", compared, failures));

    let pts = em.points();
    let (mut compared, mut failures) = (0, 0);
    for (i, &a) in pts.iter().enumerate() {
        compared += 1;
        if em.correlation(&[a]) != en.point_correlation(&[a]) {
            failures += 1;
        }
        for &b in &pts[i + 1..] {
            compared += 1;
            if em.correlation(&[a, b]) != en.point_correlation(&[a, b]) {
                failures += 1;
            }
        }
    }
    out.push(check("correlations EM = enumeration", compared, failures));

    let (even, odd) = step_counts(0, 2 * n);
    let w: Vec<Vec<Rational>> = (0..n)
        .map(|j| (0..n).map(|k| lgv_weight(alpha.exact(), even, odd, (n + k) as i64 - j as i64)).collect())
        .collect();
    let z = en.partition_function();
    let mut failures = usize::from(determinant(&w) != *z);
    match ortho_basis(n, alpha) {
        Ok(basis) => {
            let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
            if Rational::from(&basis.hankel_dets()[n - 1] * sign) != *z {
                failures += 1;
            }
        }
        Err(_) => failures += 1,
    }
    out.push(check("Z enumeration = LGV = Hankel", 2, failures));
    out
}

pub fn table(checks: &[Check]) -> String {
    let mut s = format!("{:>2}  {:<6}  {:<34}  {:>8}  result\n", "N", "alpha", "check", "compared");
    for c in checks {
        let result = if c.passed() { "PASS".to_string() } else { format!("FAIL ({} mismatches)", c.failures) };
        s.push_str(&format!("{:>2}  {:<6}  {:<34}  {:>8}  {result}\n", c.n, c.alpha, c.name, c.compared));
    }
    s
}
