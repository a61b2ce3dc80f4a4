//! Tiling JSON, density CSV and region heatmap CSV.

use std::fmt::Write as _;

use hexatile_asymptotics::{Classification, SaddleSolver, ScaledPoint};
use hexatile_lattice::{Alpha, Face, PathSystem};
use hexatile_sampler::DensityGrid;
use rayon::prelude::*;
use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// α as stored in a tiling file: `"p/q"`, or a bare JSON number read
/// exactly through its decimal form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaField {
    Text(String),
    Number(serde_json::Number),
}

impl AlphaField {
    pub fn parse(&self) -> Result<Alpha, CliError> {
        let text = match self {
            AlphaField::Text(s) => s.clone(),
            AlphaField::Number(n) => n.to_string(),
        };
        text.parse().map_err(|e| CliError::Format(format!("alpha: {e}")))
    }
}

/// `{"n", "alpha", "heights"}` with `heights[j][m]` the height of path j at
/// column m, rows sorted by j.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TilingFile {
    pub n: usize,
    pub alpha: AlphaField,
    pub heights: Vec<Vec<i64>>,
}

impl TilingFile {
    pub fn new(paths: &PathSystem, alpha: &Alpha) -> Self {
        Self { n: paths.n(), alpha: AlphaField::Text(alpha.to_string()), heights: paths.heights().to_vec() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("tiling files serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Format(format!("tiling JSON: {e}")))
    }

    /// Validated path system and α.
    pub fn decode(&self) -> Result<(PathSystem, Alpha), CliError> {
        let alpha = self.alpha.parse()?;
        let paths = PathSystem::new(self.heights.clone()).map_err(|e| CliError::Format(format!("heights: {e}")))?;
        if paths.n() != self.n {
            return Err(CliError::Format(format!("n = {} but heights describe N = {}", self.n, paths.n())));
        }
        Ok((paths, alpha))
    }
}

pub const DENSITY_HEADER: &str = "x,y,parity,p_I,p_II,p_III,source";

pub fn parity(x: i64) -> &'static str {
    if x % 2 == 0 {
        "even"
    } else {
        "odd"
    }
}

/// One density row; `p` entries are already formatted.
pub fn density_row(out: &mut String, face: Face, p: [String; 3], source: &str) {
    let [a, b, c] = p;
    let _ = writeln!(out, "{},{},{},{a},{b},{c},{source}", face.x, face.y, parity(face.x));
}

pub fn rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Aggregate sample frequencies as exact fractions `count/total`.
pub fn grid_csv(grid: &DensityGrid, source: &str) -> String {
    let mut out = String::from(DENSITY_HEADER);
    out.push('\n');
    let total = grid.total().max(1);
    for f in grid.frequencies() {
        let c = grid.counts(f.face).expect("face is in the grid");
        density_row(&mut out, f.face, c.map(|k| rational(&Rational::from((k, total)))), source);
    }
    out
}

pub fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::Liquid => "liquid",
        Classification::FrozenCorner => "frozen_corner",
        Classification::FrozenStaircase => "frozen_staircase",
        Classification::Boundary => "boundary",
    }
}

/// Limiting densities at the centers of a `size × size` grid over the
/// square `[−1, 1]²`, both parities, points of the hexagon only.
pub fn heatmap_csv(alpha: &Alpha, size: usize) -> String {
    let solver = SaddleSolver::new(alpha);
    let h = 2.0 / size as f64;
    let rows: Vec<String> = (0..size * size)
        .into_par_iter()
        .filter_map(|k| {
            let (i, j) = (k % size, k / size);
            let p = ScaledPoint::new(-1.0 + (i as f64 + 0.5) * h, -1.0 + (j as f64 + 0.5) * h).ok()?;
            let r = solver.saddle(p);
            let name = classification_name(r.classification);
            let mut s = String::new();
            for (label, d) in [("even", r.densities_even), ("odd", r.densities_odd)] {
                let _ = writeln!(s, "{},{},{label},{},{},{},{name}", p.xi, p.eta, d[0], d[1], d[2]);
            }
            Some(s)
        })
        .collect();
    let mut out = String::from("xi,eta,parity,p_I,p_II,p_III,classification\n");
    out.extend(rows);
    out
}

/// Face list `x:y,x:y,…`.
pub fn parse_faces(s: &str) -> Result<Vec<Face>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (x, y) = t.split_once(':').ok_or_else(|| CliError::Flag(format!("face {t:?} is not x:y")))?;
            let x = x.trim().parse().map_err(|_| CliError::Flag(format!("face {t:?}: bad x")))?;
            let y = y.trim().parse().map_err(|_| CliError::Flag(format!("face {t:?}: bad y")))?;
            Ok(Face::new(x, y))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_alpha_is_read_exactly() {
        let f = TilingFile::from_json(r#"{"n":1,"alpha":0.05,"heights":[[0,0,1]]}"#).unwrap();
        assert_eq!(f.alpha.parse().unwrap(), Alpha::ratio(1, 20).unwrap());
    }

    #[test]
    fn tiling_round_trip() {
        let p = PathSystem::staircase(3);
        let a = Alpha::ratio(1, 4).unwrap();
        let text = TilingFile::new(&p, &a).to_json();
        let (q, b) = TilingFile::from_json(&text).unwrap().decode().unwrap();
        assert_eq!((p, a), (q, b));
        assert!(text.contains("\"1/4\""));
    }

    #[test]
    fn face_lists() {
        assert_eq!(parse_faces("1:2, 3:4").unwrap(), vec![Face::new(1, 2), Face::new(3, 4)]);
        assert!(parse_faces("1-2").is_err());
    }
}
