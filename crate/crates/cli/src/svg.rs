//! SVG output. Lattice points `(x, y)` are drawn at
//! `(x·√3/2, −(y − x/2))`, which makes the lozenges rhombi of a regular
//! triangular lattice with y pointing up.

use std::fmt::Write as _;

use hexatile_asymptotics::ArcticGeometry;
use hexatile_lattice::{LozengeType, TilingMap};
use serde::Deserialize;

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Pixels per lattice unit in tiling drawings.
const UNIT: f64 = 12.0;

pub const FILL_I: &str = "#e0a43c";
pub const FILL_II_EVEN: &str = "#2f5f9e";
pub const FILL_II_ODD: &str = "#86acd8";
pub const FILL_III: &str = "#d8d8d0";

fn header() -> String {
    format!("<!-- hexatile {} -->\n", env!("CARGO_PKG_VERSION"))
}

fn project(x: f64, y: f64, unit: f64) -> (f64, f64) {
    (x * SQRT3_2 * unit, -(y - x / 2.0) * unit)
}

fn fmt_point(out: &mut String, p: (f64, f64)) {
    let _ = write!(out, "{:.3},{:.3} ", p.0, p.1);
}

/// The four corners of the lozenge owning face `(x, y)`.
pub fn lozenge_vertices(x: i64, y: i64, t: LozengeType) -> [(i64, i64); 4] {
    match t {
        LozengeType::TypeI => [(x, y), (x + 1, y + 1), (x + 1, y + 2), (x, y + 1)],
        LozengeType::TypeII => [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)],
        LozengeType::TypeIII => [(x - 1, y), (x, y), (x + 1, y + 1), (x, y + 1)],
    }
}

pub fn fill(x: i64, t: LozengeType) -> &'static str {
    match t {
        LozengeType::TypeI => FILL_I,
        LozengeType::TypeII if x % 2 == 0 => FILL_II_EVEN,
        LozengeType::TypeII => FILL_II_ODD,
        LozengeType::TypeIII => FILL_III,
    }
}

/// Only the curve is needed from a region file.
#[derive(Debug, Deserialize)]
pub struct Overlay {
    pub boundary: Vec<Vec<[f64; 2]>>,
}

fn open(out: &mut String, min: (f64, f64), size: (f64, f64)) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&header());
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.3} {:.3} {:.3} {:.3}\" width=\"{:.0}\" height=\"{:.0}\">",
        min.0, min.1, size.0, size.1, size.0, size.1
    );
}

pub fn tiling_svg(map: &TilingMap, overlay: Option<&Overlay>) -> String {
    let n = map.n() as f64;
    let pad = UNIT;
    let (x0, y0) = (-pad, -1.5 * n * UNIT - pad);
    let size = (2.0 * n * SQRT3_2 * UNIT + 2.0 * pad, 2.0 * n * UNIT + 2.0 * pad);
    let mut out = String::new();
    open(&mut out, (x0, y0), size);
    out.push_str("<g stroke=\"#333\" stroke-width=\"0.6\" stroke-linejoin=\"round\">\n");
    for (face, t) in map.iter() {
        out.push_str("<polygon points=\"");
        for (x, y) in lozenge_vertices(face.x, face.y, t) {
            fmt_point(&mut out, project(x as f64, y as f64, UNIT));
        }
        out.pop();
        let _ = writeln!(out, "\" fill=\"{}\"/>", fill(face.x, t));
    }
    out.push_str("</g>\n");
    if let Some(o) = overlay {
        out.push_str("<g fill=\"none\" stroke=\"#c0142c\" stroke-width=\"2\">\n");
        for line in &o.boundary {
            polyline(&mut out, line.iter().map(|p| project(n * (1.0 + p[0]), n * (1.0 + p[1]), UNIT)));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn polyline(out: &mut String, pts: impl Iterator<Item = (f64, f64)>) {
    out.push_str("<polyline points=\"");
    let start = out.len();
    for p in pts {
        fmt_point(out, p);
    }
    if out.len() > start {
        out.pop();
    }
    out.push_str("\"/>\n");
}

/// Hexagon, arctic curve, tangency points and cusps in the unit hexagon.
pub fn region_svg(geo: &ArcticGeometry) -> String {
    let unit = 200.0;
    let to = |xi: f64, eta: f64| project(1.0 + xi, 1.0 + eta, unit);
    let pad = 20.0;
    let mut out = String::new();
    open(&mut out, (-pad, -1.5 * unit - pad), (2.0 * SQRT3_2 * unit + 2.0 * pad, 2.0 * unit + 2.0 * pad));
    let corners = [(-1.0, -1.0), (-1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0), (0.0, -1.0)];
    out.push_str("<polygon fill=\"#f4f1e8\" stroke=\"#333\" stroke-width=\"1.5\" points=\"");
    for (xi, eta) in corners {
        fmt_point(&mut out, to(xi, eta));
    }
    out.pop();
    out.push_str("\"/>\n");
    out.push_str("<g fill=\"none\" stroke=\"#c0142c\" stroke-width=\"1.5\">\n");
    for line in &geo.boundary {
        polyline(&mut out, line.iter().map(|p| to(p[0], p[1])));
    }
    out.push_str("</g>\n<g fill=\"#2f5f9e\">\n");
    for (_, p) in geo.tangency.all() {
        let (a, b) = to(p[0], p[1]);
        let _ = writeln!(out, "<circle cx=\"{a:.3}\" cy=\"{b:.3}\" r=\"3\"/>");
    }
    out.push_str("</g>\n<g fill=\"#111\">\n");
    for p in &geo.cusps {
        let (a, b) = to(p[0], p[1]);
        let _ = writeln!(out, "<circle cx=\"{a:.3}\" cy=\"{b:.3}\" r=\"4\"/>");
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Drops the version comment, for comparing drawings across builds.
pub fn strip_header(svg: &str) -> String {
    svg.lines().filter(|l| !l.starts_with("<!-- hexatile")).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use hexatile_lattice::{tiling_from_paths, PathSystem};

    #[test]
    fn one_polygon_per_lozenge() {
        let map = tiling_from_paths(&PathSystem::staircase(3));
        let svg = tiling_svg(&map, None);
        assert_eq!(svg.matches("<polygon").count(), 27);
        assert!(!svg.contains(FILL_II_EVEN));
        assert!(svg.contains(FILL_II_ODD) && svg.contains(FILL_I) && svg.contains(FILL_III));
    }

    #[test]
    fn lozenges_have_unit_area() {
        for t in LozengeType::ALL {
            let v = lozenge_vertices(0, 0, t);
            let mut area2 = 0;
            for k in 0..4 {
                let (a, b) = (v[k], v[(k + 1) % 4]);
                area2 += a.0 * b.1 - b.0 * a.1;
            }
            assert_eq!(area2, 2, "{t:?}");
        }
    }
}
