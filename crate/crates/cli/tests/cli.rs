use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use hexatile_cli::svg::strip_header;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hexatile"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hexatile-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn region_at_one_is_the_inscribed_ellipse() {
    let dir = scratch("ellipse");
    assert_eq!(run(&["region", "--alpha", "1", "--resolution", "400", "--out", path(&dir)]).0, 0);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("region.json")).unwrap()).unwrap();
    let lines: Vec<Vec<(f64, f64)>> = json["boundary"]
        .as_array()
        .unwrap()
        .iter()
        .map(|line| line.as_array().unwrap().iter().map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap())).collect())
        .collect();
    // Points of 4ξ² − 4ξη + 4η² = 3, by scaling a direction onto it.
    let radial = |(x, y): (f64, f64)| {
        let s = (3.0 / (4.0 * x * x - 4.0 * x * y + 4.0 * y * y)).sqrt();
        (x * s, y * s)
    };
    let ellipse: Vec<(f64, f64)> = (0..20_000)
        .map(|k| {
            let t = k as f64 * std::f64::consts::TAU / 20_000.0;
            radial((t.cos(), t.sin()))
        })
        .collect();
    let seg = |p: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        let d = (b.0 - a.0, b.1 - a.1);
        let t = (((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / (d.0 * d.0 + d.1 * d.1)).clamp(0.0, 1.0);
        (a.0 + t * d.0 - p.0).hypot(a.1 + t * d.1 - p.1)
    };
    let mut h: f64 = 0.0;
    for line in &lines {
        for &p in line {
            let d = (0..ellipse.len()).map(|k| seg(p, ellipse[k], ellipse[(k + 1) % ellipse.len()])).fold(f64::INFINITY, f64::min);
            h = h.max(d);
        }
    }
    for &e in ellipse.iter().step_by(10) {
        let d = lines.iter().flat_map(|l| l.windows(2).map(move |w| seg(e, w[0], w[1]))).fold(f64::INFINITY, f64::min);
        h = h.max(d);
    }
    assert!(h <= 1e-3, "Hausdorff distance {h}");
    assert!(fs::read_to_string(dir.join("region.svg")).unwrap().contains("<polyline"));
}

#[test]
fn verify_small_sizes() {
    let (code, out) = run(&["verify", "--max-n", "3"]);
    assert_eq!(code, 0);
    assert!(!out.contains("FAIL"));
    assert_eq!(out.matches("PASS").count(), 48);
}

#[test]
fn same_seed_same_bytes() {
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    for d in [&a, &b] {
        let args = ["--threads", "2", "sample", "--n", "5", "--alpha", "0.3", "--count", "4", "--seed", "11", "--out", path(d)];
        assert_eq!(run(&args).0, 0);
        let svg = d.join("t.svg");
        assert_eq!(run(&["render", path(&d.join("tiling_00002.json")), "--out", path(&svg)]).0, 0);
    }
    for name in ["tiling_00000.json", "tiling_00003.json", "density.csv"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    let svg = |d: &Path| strip_header(&fs::read_to_string(d.join("t.svg")).unwrap());
    assert_eq!(svg(&a), svg(&b));
    let other = scratch("det-c");
    let args = ["sample", "--n", "5", "--alpha", "0.3", "--count", "4", "--seed", "12", "--out", path(&other)];
    assert_eq!(run(&args).0, 0);
    assert_ne!(fs::read(a.join("density.csv")).unwrap(), fs::read(other.join("density.csv")).unwrap());
}

#[test]
fn render_accepts_sampled_tilings() {
    let dir = scratch("render");
    let args = ["sample", "--n", "6", "--alpha", "1/4", "--count", "2", "--mode", "exact", "--out", path(&dir)];
    assert_eq!(run(&args).0, 0);
    assert_eq!(run(&["region", "--alpha", "1/4", "--resolution", "40", "--out", path(&dir)]).0, 0);
    let region = dir.join("region.json");
    for i in 0..2 {
        let input = dir.join(format!("tiling_{i:05}.json"));
        let out = dir.join(format!("t{i}.svg"));
        let args = ["render", path(&input), "--out", path(&out), "--overlay", path(&region)];
        assert_eq!(run(&args).0, 0);
        let svg = fs::read_to_string(out).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 3 * 36);
        assert!(svg.contains("<polyline"));
    }
}

#[test]
fn staircase_renders_without_even_flat_steps() {
    let dir = scratch("staircase");
    let heights: Vec<Vec<i64>> = (0..4).map(|j| (0..=8).map(|m| j + (m + 1) / 2).collect()).collect();
    let json = serde_json::json!({ "n": 4, "alpha": 0.05, "heights": heights });
    fs::write(dir.join("s.json"), json.to_string()).unwrap();
    assert_eq!(run(&["render", path(&dir.join("s.json")), "--out", path(&dir.join("s.svg"))]).0, 0);
    let svg = fs::read_to_string(dir.join("s.svg")).unwrap();
    assert!(!svg.contains(hexatile_cli::svg::FILL_II_EVEN));
    assert_eq!(svg.matches(hexatile_cli::svg::FILL_I).count(), 16);
    assert_eq!(svg.matches(hexatile_cli::svg::FILL_II_ODD).count(), 16);
}

#[test]
fn density_table_matches_kernel_diagonal() {
    let (code, out) = run(&["densities", "--n", "3", "--alpha", "1/9", "--exact"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "x,y,parity,p_I,p_II,p_III,source");
    assert_eq!(lines.len(), 1 + 27 - 3);
    let (code, float) = run(&["densities", "--n", "3", "--alpha", "1/9", "--faces", "2:3"]);
    assert_eq!(code, 0);
    let exact_row = lines.iter().find(|l| l.starts_with("2,3,")).unwrap();
    let parse = |row: &str| -> Vec<f64> {
        row.split(',').skip(3).take(3).map(|v| match v.split_once('/') {
            Some((p, q)) => p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap(),
            None => v.parse().unwrap(),
        }).collect()
    };
    let (e, f) = (parse(exact_row), parse(float.lines().nth(1).unwrap()));
    for k in 0..3 {
        assert!((e[k] - f[k]).abs() < 1e-12);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["sample", "--n", "3"]).0, 2);
    assert_eq!(run(&["densities", "--n", "3", "--alpha", "abc"]).0, 2);
    assert_eq!(run(&["kernel", "--n", "3", "--alpha", "1/4", "--query", "1,2,3"]).0, 2);
    assert_eq!(run(&["densities", "--n", "3", "--alpha", "3/2"]).0, 3);
    assert_eq!(run(&["kernel", "--n", "3", "--alpha", "1/4", "--query", "0,0,1,1"]).0, 3);
    assert_eq!(run(&["verify", "--max-n", "7"]).0, 3);
    let dir = scratch("codes");
    assert_eq!(run(&["sample", "--n", "40", "--alpha", "1/4", "--mode", "exact", "--out", path(&dir)]).0, 3);
    assert_eq!(run(&["render", path(&dir.join("missing.json")), "--out", path(&dir.join("x.svg"))]).0, 1);
    fs::write(dir.join("bad.json"), r#"{"n":2,"alpha":"1/4","heights":[[0,1,1,2,2],[0,1,1,2,2]]}"#).unwrap();
    assert_eq!(run(&["render", path(&dir.join("bad.json")), "--out", path(&dir.join("x.svg"))]).0, 1);
}
