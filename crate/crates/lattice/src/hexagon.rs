use crate::{Alpha, LatticeError};

/// Hexagon with corners (0,0), (0,N), (N,2N), (2N,2N), (2N,N), (N,0) and the
/// weight α of flat steps leaving even columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexagonSpec {
    n: usize,
    alpha: Alpha,
}

/// Vertical unit segment of column `x` between heights `y` and `y + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub x: i64,
    pub y: i64,
}

impl Face {
    pub fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn is_even(&self) -> bool {
        self.x % 2 == 0
    }
}

impl HexagonSpec {
    pub fn new(n: usize, alpha: Alpha) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::ZeroSize);
        }
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    /// Heights `y` whose segments at column `x` lie inside the hexagon.
    pub fn column_range(n: usize, x: i64) -> std::ops::Range<i64> {
        let n = n as i64;
        (x - n).max(0)..(n + x).min(2 * n)
    }

    /// All faces owned by lozenges, column by column (3N² of them).
    pub fn faces(n: usize) -> Vec<Face> {
        (0..2 * n as i64)
            .flat_map(|x| Self::column_range(n, x).map(move |y| Face::new(x, y)))
            .collect()
    }

    /// Faces at columns 1..=2N−1, the ones with a kernel representation.
    pub fn interior_faces(n: usize) -> Vec<Face> {
        Self::faces(n).into_iter().filter(|f| f.x >= 1).collect()
    }

    pub fn contains(n: usize, face: Face) -> bool {
        (0..2 * n as i64).contains(&face.x) && Self::column_range(n, face.x).contains(&face.y)
    }

    pub fn is_interior(n: usize, face: Face) -> bool {
        face.x >= 1 && Self::contains(n, face)
    }

    /// Scaled coordinates (ξ, η) = (x/N − 1, y/N − 1) of the lattice point.
    pub fn scaled(n: usize, x: f64, y: f64) -> (f64, f64) {
        let n = n as f64;
        (x / n - 1.0, y / n - 1.0)
    }
}
