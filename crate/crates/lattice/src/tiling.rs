use crate::{Alpha, Face, HexagonSpec, LatticeError, PathSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LozengeType {
    /// The path through the face steps up.
    TypeI,
    /// The path through the face steps flat.
    TypeII,
    /// No path through the face.
    TypeIII,
}

impl LozengeType {
    pub const ALL: [LozengeType; 3] = [LozengeType::TypeI, LozengeType::TypeII, LozengeType::TypeIII];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Lozenge type of every face, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingMap {
    n: usize,
    columns: Vec<Vec<LozengeType>>,
}

impl TilingMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, face: Face) -> Option<LozengeType> {
        if !HexagonSpec::contains(self.n, face) {
            return None;
        }
        let lo = HexagonSpec::column_range(self.n, face.x).start;
        Some(self.columns[face.x as usize][(face.y - lo) as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Face, LozengeType)> + '_ {
        self.columns.iter().enumerate().flat_map(move |(x, col)| {
            let lo = HexagonSpec::column_range(self.n, x as i64).start;
            col.iter().enumerate().map(move |(i, &t)| (Face::new(x as i64, lo + i as i64), t))
        })
    }

    pub fn count(&self, t: LozengeType) -> usize {
        self.columns.iter().flatten().filter(|&&u| u == t).count()
    }
}

/// Energy and weight of one tiling.
#[derive(Clone, Debug, PartialEq)]
pub struct TilingStats {
    /// Number of TypeII lozenges at even columns.
    pub energy: u64,
    /// `energy · ln α`.
    pub log_weight: f64,
}

pub fn tiling_from_paths(p: &PathSystem) -> TilingMap {
    let n = p.n();
    let columns = (0..2 * n)
        .map(|x| {
            let here = p.column(x);
            let next = p.column(x + 1);
            HexagonSpec::column_range(n, x as i64)
                .map(|y| match here.iter().position(|&h| h == y) {
                    Some(j) if next[j] > y => LozengeType::TypeI,
                    Some(_) => LozengeType::TypeII,
                    None => LozengeType::TypeIII,
                })
                .collect()
        })
        .collect();
    TilingMap { n, columns }
}

/// Inverse of [`tiling_from_paths`]; fails on maps that no path system produces.
pub fn paths_from_tiling(map: &TilingMap) -> Result<PathSystem, LatticeError> {
    let n = map.n;
    let mut heights: Vec<Vec<i64>> = (0..n).map(|j| vec![j as i64]).collect();
    for x in 0..2 * n as i64 {
        let mut occupied = 0;
        for y in HexagonSpec::column_range(n, x) {
            let t = map.get(Face::new(x, y)).expect("face in range");
            let on_path = heights.iter().position(|row| row[x as usize] == y);
            match (t, on_path) {
                (LozengeType::TypeIII, None) => {}
                (LozengeType::TypeI, Some(j)) => heights[j].push(y + 1),
                (LozengeType::TypeII, Some(j)) => heights[j].push(y),
                _ => return Err(LatticeError::Inconsistent { x, y }),
            }
            occupied += usize::from(on_path.is_some());
        }
        if occupied != n {
            return Err(LatticeError::Inconsistent { x, y: -1 });
        }
    }
    PathSystem::new(heights)
}

pub fn stats(p: &PathSystem, alpha: &Alpha) -> TilingStats {
    let energy = p.energy();
    let log_weight = if energy == 0 { 0.0 } else { energy as f64 * alpha.to_f64().ln() };
    TilingStats { energy, log_weight }
}
