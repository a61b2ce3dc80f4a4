use crate::{HexagonSpec, LatticeError, LozengeType, PathSystem, Face};

/// h(x, y) = number of paths strictly below height y at column x, for
/// 0 ≤ x, y ≤ 2N. Path heights are compared as π_j(x) = heights + 1/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightField {
    n: usize,
    h: Vec<Vec<u32>>,
}

impl HeightField {
    pub fn from_paths(p: &PathSystem) -> Self {
        let n = p.n();
        let h = (0..=2 * n)
            .map(|x| {
                let col = p.column(x);
                (0..=2 * n as i64).map(|y| col.iter().filter(|&&c| c < y).count() as u32).collect()
            })
            .collect();
        Self { n, h }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.h[x][y]
    }
}

/// Classifies a face from height differences:
/// TypeI iff h(x,y+1) − h(x+1,y+1) = 1, TypeII iff h(x+1,y+1) − h(x,y) = 1,
/// TypeIII iff h(x,y+1) − h(x,y) = 0. Exactly one holds on a valid field.
pub fn lozenge_from_height(h: &HeightField, face: Face) -> Result<LozengeType, LatticeError> {
    if !HexagonSpec::contains(h.n, face) {
        return Err(LatticeError::FaceRange { x: face.x, y: face.y });
    }
    let (x, y) = (face.x as usize, face.y as usize);
    let g = |x: usize, y: usize| h.get(x, y) as i64;
    let is_i = g(x, y + 1) - g(x + 1, y + 1) == 1;
    let is_ii = g(x + 1, y + 1) - g(x, y) == 1;
    let is_iii = g(x, y + 1) == g(x, y);
    match (is_i, is_ii, is_iii) {
        (true, false, false) => Ok(LozengeType::TypeI),
        (false, true, false) => Ok(LozengeType::TypeII),
        (false, false, true) => Ok(LozengeType::TypeIII),
        _ => Err(LatticeError::Inconsistent { x: face.x, y: face.y }),
    }
}
