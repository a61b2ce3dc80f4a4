use crate::LatticeError;

/// N non-intersecting up-right paths on columns 0..=2N.
///
/// `heights[j][m]` is π_j(m) − 1/2. Path j starts at j and ends at N + j;
/// every step rises by 0 or 1 and paths stay strictly ordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathSystem {
    n: usize,
    heights: Vec<Vec<i64>>,
}

/// Elementary move: shift path `path` at `column` by one unit, turning an
/// (up, flat) pair of steps into (flat, up) or back. On the tiling this
/// rotates the three lozenges around a unit hexagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flip {
    pub path: usize,
    pub column: usize,
    /// Height after the move.
    pub to: i64,
}

impl PathSystem {
    pub fn new(heights: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = heights.len();
        if n == 0 {
            return Err(LatticeError::ZeroSize);
        }
        let p = Self { n, heights };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), LatticeError> {
        let n = self.n;
        let cols = 2 * n + 1;
        for row in &self.heights {
            if row.len() != cols {
                return Err(LatticeError::Shape { n, rows: self.heights.len(), cols: row.len(), expected_cols: cols });
            }
        }
        for (j, row) in self.heights.iter().enumerate() {
            if row[0] != j as i64 {
                return Err(LatticeError::Start { path: j, expected: j as i64 });
            }
            if row[2 * n] != (n + j) as i64 {
                return Err(LatticeError::End { path: j, expected: (n + j) as i64 });
            }
            for m in 0..2 * n {
                if !(0..=1).contains(&(row[m + 1] - row[m])) {
                    return Err(LatticeError::Step { path: j, column: m });
                }
            }
        }
        for j in 1..n {
            for m in 0..cols {
                if self.heights[j][m] <= self.heights[j - 1][m] {
                    return Err(LatticeError::Crossing { lower: j - 1, upper: j, column: m });
                }
            }
        }
        Ok(())
    }

    /// Every path rises on even columns and stays flat on odd ones: the
    /// unique zero-energy configuration.
    pub fn staircase(n: usize) -> Self {
        let heights = (0..n)
            .map(|j| (0..=2 * n).map(|m| (j + m.div_ceil(2)) as i64).collect())
            .collect();
        Self { n, heights }
    }

    /// All paths flat first, then up: the pointwise lowest configuration.
    pub fn lowest(n: usize) -> Self {
        let heights = (0..n)
            .map(|j| (0..=2 * n).map(|m| (j + m.saturating_sub(n)) as i64).collect())
            .collect();
        Self { n, heights }
    }

    /// All paths up first, then flat: the pointwise highest configuration.
    pub fn highest(n: usize) -> Self {
        let heights = (0..n).map(|j| (0..=2 * n).map(|m| (j + m.min(n)) as i64).collect()).collect();
        Self { n, heights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn heights(&self) -> &[Vec<i64>] {
        &self.heights
    }

    pub fn height(&self, path: usize, column: usize) -> i64 {
        self.heights[path][column]
    }

    /// Heights of all paths at one column, increasing.
    pub fn column(&self, m: usize) -> Vec<i64> {
        self.heights.iter().map(|row| row[m]).collect()
    }

    /// The move available for `path` at interior `column`, if any.
    pub fn flip_at(&self, path: usize, column: usize) -> Option<Flip> {
        if column == 0 || column >= 2 * self.n {
            return None;
        }
        let row = &self.heights[path];
        let (before, after) = (row[column - 1], row[column + 1]);
        if after - before != 1 {
            return None;
        }
        let to = if row[column] == before { before + 1 } else { before };
        let below_ok = path == 0 || self.heights[path - 1][column] < to;
        let above_ok = path + 1 == self.n || self.heights[path + 1][column] > to;
        (below_ok && above_ok).then_some(Flip { path, column, to })
    }

    /// Energy change caused by `flip`: lowering a path at an odd column
    /// creates a flat step at the even column before it (+1), lowering at
    /// an even column removes the flat step leaving it (−1).
    pub fn flip_energy_change(&self, flip: Flip) -> i64 {
        let lowering = flip.to < self.heights[flip.path][flip.column];
        let odd = flip.column % 2 == 1;
        if lowering == odd {
            1
        } else {
            -1
        }
    }

    pub fn apply(&mut self, flip: Flip) {
        self.heights[flip.path][flip.column] = flip.to;
    }

    /// Number of flat steps leaving even columns.
    pub fn energy(&self) -> u64 {
        self.heights
            .iter()
            .map(|row| (0..2 * self.n).step_by(2).filter(|&m| row[m + 1] == row[m]).count() as u64)
            .sum()
    }
}
