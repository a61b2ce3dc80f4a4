use std::collections::HashMap;

use hexatile_lattice::{Alpha, Face, HexagonSpec, LozengeType, PathSystem};
use rug::Rational;

use crate::{OracleError, MAX_N};

/// Every tiling of the hexagon with its weight `α^E`, where E counts flat
/// steps in even columns. Probabilities are kept as energy histograms so
/// that they stay exact polynomials in α until the final division.
#[derive(Clone, Debug)]
pub struct EnumerationResult {
    n: usize,
    alpha: Alpha,
    tilings: Vec<(PathSystem, u32)>,
    index: HashMap<Vec<Vec<i64>>, usize>,
    histogram: Vec<u64>,
    alpha_pows: Vec<Rational>,
    partition: Rational,
}

/// Column configurations reachable from `cur` in one step that can still
/// reach the top boundary.
fn successors(n: usize, m: usize, cur: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let next: Vec<i64> = cur.iter().enumerate().map(|(j, h)| h + i64::from((mask >> j) & 1)).collect();
        if next.windows(2).any(|w| w[1] <= w[0]) {
            continue;
        }
        // Path j must still be able to end at N + j.
        let left = (2 * n - (m + 1)) as i64;
        if next.iter().enumerate().any(|(j, h)| h + left < (n + j) as i64 || *h > (n + j) as i64) {
            continue;
        }
        out.push(next);
    }
    out
}

pub fn enumerate(n: usize, alpha: &Alpha) -> Result<EnumerationResult, OracleError> {
    if n == 0 || n > MAX_N {
        return Err(OracleError::Size { n, max: MAX_N });
    }
    let mut memo: HashMap<(usize, Vec<i64>), Vec<Vec<i64>>> = HashMap::new();
    let mut tilings = Vec::new();
    let start: Vec<i64> = (0..n as i64).collect();
    let mut stack = vec![start];
    search(n, &mut stack, &mut memo, &mut tilings);

    let tilings: Vec<(PathSystem, u32)> = tilings
        .into_iter()
        .map(|cols| {
            let heights: Vec<Vec<i64>> = (0..n).map(|j| cols.iter().map(|c| c[j]).collect()).collect();
            let energy = flat_even_steps(&heights);
            (PathSystem::new(heights).expect("search only yields valid systems"), energy)
        })
        .collect();
    let max_e = tilings.iter().map(|t| t.1).max().unwrap_or(0) as usize;
    let mut histogram = vec![0u64; max_e + 1];
    for (_, e) in &tilings {
        histogram[*e as usize] += 1;
    }
    let mut alpha_pows = vec![Rational::from(1)];
    for k in 0..max_e {
        alpha_pows.push(Rational::from(&alpha_pows[k] * alpha.exact()));
    }
    let partition = weigh(&histogram, &alpha_pows);
    let index = tilings.iter().enumerate().map(|(i, (p, _))| (p.heights().to_vec(), i)).collect();
    Ok(EnumerationResult { n, alpha: alpha.clone(), tilings, index, histogram, alpha_pows, partition })
}

fn search(
    n: usize,
    stack: &mut Vec<Vec<i64>>,
    memo: &mut HashMap<(usize, Vec<i64>), Vec<Vec<i64>>>,
    out: &mut Vec<Vec<Vec<i64>>>,
) {
    let m = stack.len() - 1;
    if m == 2 * n {
        out.push(stack.clone());
        return;
    }
    let key = (m, stack[m].clone());
    let next = memo.entry(key).or_insert_with_key(|(m, cur)| successors(n, *m, cur)).clone();
    for col in next {
        stack.push(col);
        search(n, stack, memo, out);
        stack.pop();
    }
}

fn flat_even_steps(heights: &[Vec<i64>]) -> u32 {
    heights
        .iter()
        .map(|row| (0..row.len() - 1).filter(|&m| m % 2 == 0 && row[m + 1] == row[m]).count() as u32)
        .sum()
}

fn weigh(histogram: &[u64], pows: &[Rational]) -> Rational {
    let mut total = Rational::new();
    for (e, c) in histogram.iter().enumerate() {
        if *c > 0 {
            total += Rational::from(&pows[e] * *c);
        }
    }
    total
}

/// Type of the face from the raw heights: I if a path at height y steps
/// up, II if it steps flat, III otherwise.
fn face_type(p: &PathSystem, face: Face) -> LozengeType {
    let (x, y) = (face.x as usize, face.y);
    for row in p.heights() {
        if row[x] == y {
            return if row[x + 1] == y + 1 { LozengeType::TypeI } else { LozengeType::TypeII };
        }
    }
    LozengeType::TypeIII
}

impl EnumerationResult {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.tilings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tilings.is_empty()
    }

    /// Path systems with their α-exponent.
    pub fn tilings(&self) -> &[(PathSystem, u32)] {
        &self.tilings
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.alpha_pows[self.tilings[i].1 as usize]
    }

    /// Number of tilings with each α-exponent.
    pub fn energy_histogram(&self) -> &[u64] {
        &self.histogram
    }

    pub fn partition_function(&self) -> &Rational {
        &self.partition
    }

    pub fn gibbs_probability(&self, i: usize) -> Rational {
        Rational::from(self.weight(i) / &self.partition)
    }

    pub fn index_of(&self, p: &PathSystem) -> Option<usize> {
        self.index.get(p.heights()).copied()
    }

    /// Probability of the event, summed over tilings where it holds.
    pub fn probability(&self, event: impl Fn(&PathSystem) -> bool) -> Rational {
        let mut hist = vec![0u64; self.histogram.len()];
        for (p, e) in &self.tilings {
            if event(p) {
                hist[*e as usize] += 1;
            }
        }
        weigh(&hist, &self.alpha_pows) / &self.partition
    }

    /// `[P(I), P(II), P(III)]` at a face.
    pub fn face_marginal(&self, face: Face) -> [Rational; 3] {
        let mut hist = vec![vec![0u64; self.histogram.len()]; 3];
        for (p, e) in &self.tilings {
            hist[face_type(p, face).index()][*e as usize] += 1;
        }
        per_type(&hist, |h| weigh(h, &self.alpha_pows) / &self.partition)
    }

    /// Face marginals for all 3N² faces.
    pub fn marginals(&self) -> Vec<(Face, [Rational; 3])> {
        let faces = HexagonSpec::faces(self.n);
        let bins = self.histogram.len();
        let mut hist = vec![vec![vec![0u64; bins]; 3]; faces.len()];
        for (p, e) in &self.tilings {
            for (i, f) in faces.iter().enumerate() {
                hist[i][face_type(p, *f).index()][*e as usize] += 1;
            }
        }
        faces
            .into_iter()
            .zip(hist)
            .map(|(f, h)| (f, per_type(&h, |t| weigh(t, &self.alpha_pows) / &self.partition)))
            .collect()
    }

    /// Probability that paths pass through every point `(x, y + 1/2)`.
    pub fn point_correlation(&self, points: &[(i64, i64)]) -> Rational {
        self.probability(|p| {
            points.iter().all(|&(x, y)| {
                (0..=2 * self.n as i64).contains(&x) && p.heights().iter().any(|row| row[x as usize] == y)
            })
        })
    }
}

fn per_type(hist: &[Vec<u64>], f: impl Fn(&[u64]) -> Rational) -> [Rational; 3] {
    [f(&hist[0]), f(&hist[1]), f(&hist[2])]
}
