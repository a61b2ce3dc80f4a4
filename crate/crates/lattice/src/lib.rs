//! Combinatorial model of lozenge tilings of the regular N×N×N hexagon.
//!
//! A tiling is stored as N non-intersecting up-right lattice paths on the
//! columns 0..=2N. Path heights are kept as integers (the half-integer
//! height minus one half), so all lattice data is integral.
//!
//! Faces are vertical unit segments: face `(x, y)` is the segment of column
//! `x` between heights `y` and `y + 1`. Its lozenge type is decided by the
//! path through the point `(x, y + 1/2)`:
//!
//! ```text
//!   TypeI   path steps up     lozenge (x,y) (x+1,y+1) (x+1,y+2) (x,y+1)
//!   TypeII  path steps flat   square  (x,y) (x+1,y)   (x+1,y+1) (x,y+1)
//!   TypeIII no path           lozenge (x-1,y) (x,y)   (x+1,y+1) (x,y+1)
//! ```
//!
//! Every lozenge of the hexagon owns exactly one face in columns 0..2N, so a
//! tiling has 3N² faces.

mod alpha;
mod error;
mod height;
mod hexagon;
mod paths;
mod tiling;

pub use alpha::Alpha;
pub use error::LatticeError;
pub use height::{lozenge_from_height, HeightField};
pub use hexagon::{Face, HexagonSpec};
pub use paths::{Flip, PathSystem};
pub use tiling::{paths_from_tiling, stats, tiling_from_paths, LozengeType, TilingMap, TilingStats};
