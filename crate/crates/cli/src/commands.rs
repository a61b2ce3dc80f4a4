use std::fs;
use std::path::Path;

use hexatile_asymptotics::arctic_geometry;
use hexatile_exact::{exact_n_limit, ExactKernel, FloatKernel};
use hexatile_lattice::{tiling_from_paths, Alpha, HexagonSpec, LatticeError};
use hexatile_sampler::{sample_batch, ArithmeticMode, DensityGrid, SamplerConfig, SamplerError};
use rayon::prelude::*;

use crate::args::{Command, Mode};
use crate::formats::{self, density_row, TilingFile, DENSITY_HEADER};
use crate::svg::{self, Overlay};
use crate::{verify, CliError};

pub fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Sample { n, alpha, count, seed, mode, out } => sample(n, &parse_alpha(&alpha)?, count, seed, mode, &out),
        Command::Densities { n, alpha, faces, exact, out } => {
            densities(n, &parse_alpha(&alpha)?, &faces, exact, out.as_deref())
        }
        Command::Kernel { n, alpha, query } => kernel(n, &parse_alpha(&alpha)?, &query),
        Command::Region { alpha, resolution, out, heatmap } => region(&parse_alpha(&alpha)?, resolution, &out, heatmap),
        Command::Verify { max_n } => run_verify(max_n),
        Command::Render { input, out, overlay } => render(&input, &out, overlay.as_deref()),
    }
}

/// Malformed text is a flag error, a value outside (0, 1] a range error.
fn parse_alpha(s: &str) -> Result<Alpha, CliError> {
    s.parse().map_err(|e: LatticeError| match e {
        LatticeError::AlphaRange(_) => CliError::Range(format!("--alpha: {e}")),
        _ => CliError::Flag(format!("--alpha: {e}")),
    })
}

fn positive(name: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        return Err(CliError::Range(format!("--{name} must be at least 1")));
    }
    Ok(())
}

fn exact_allowed(n: usize) -> Result<(), CliError> {
    let limit = exact_n_limit();
    if n > limit {
        return Err(CliError::Range(format!("exact arithmetic is limited to N <= {limit} (HEXATILE_EXACT_N), got {n}")));
    }
    Ok(())
}

fn with_path(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(with_path(path))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(with_path(path))
}

fn sample(n: usize, alpha: &Alpha, count: usize, seed: u64, mode: Mode, out: &Path) -> Result<(), CliError> {
    positive("n", n)?;
    positive("count", count)?;
    let (arith, source) = match mode {
        Mode::Exact => {
            exact_allowed(n)?;
            (ArithmeticMode::Exact, "exact")
        }
        Mode::Float => (ArithmeticMode::LogFloat, "float"),
    };
    let cfg = SamplerConfig::new(n, alpha.clone(), seed, arith, count);
    let samples = sample_batch(&cfg).map_err(|e| match e {
        SamplerError::ExactTooLarge { .. } | SamplerError::ZeroSize => CliError::Range(e.to_string()),
        _ => CliError::Tolerance(e.to_string()),
    })?;
    fs::create_dir_all(out)?;
    for (i, s) in samples.iter().enumerate() {
        write(&out.join(format!("tiling_{i:05}.json")), &TilingFile::new(s, alpha).to_json())?;
    }
    let grid = DensityGrid::from_samples(n, alpha.clone(), &samples).map_err(|e| CliError::Tolerance(e.to_string()))?;
    write(&out.join("density.csv"), &formats::grid_csv(&grid, source))?;
    eprintln!("wrote {count} tilings and density.csv to {}", out.display());
    Ok(())
}

fn densities(n: usize, alpha: &Alpha, faces: &str, exact: bool, out: Option<&Path>) -> Result<(), CliError> {
    positive("n", n)?;
    let faces = if faces.trim() == "all" { HexagonSpec::interior_faces(n) } else { formats::parse_faces(faces)? };
    if let Some(f) = faces.iter().find(|f| !HexagonSpec::is_interior(n, **f)) {
        return Err(CliError::Range(format!("face {}:{} is not an interior face for N = {n}", f.x, f.y)));
    }
    let rows: Vec<Result<[String; 3], CliError>> = if exact {
        exact_allowed(n)?;
        let k = ExactKernel::new(n, alpha).map_err(|e| CliError::Tolerance(e.to_string()))?;
        faces
            .par_iter()
            .map(|&f| {
                let p = k.face_probabilities(f).map_err(|e| CliError::Range(e.to_string()))?;
                Ok(p.p.each_ref().map(formats::rational))
            })
            .collect()
    } else {
        let k = FloatKernel::with_defaults(n, alpha).map_err(|e| CliError::Tolerance(e.to_string()))?;
        faces
            .par_iter()
            .map(|&f| {
                let (p, check) = k.face_probabilities_checked(f).map_err(|e| CliError::Range(e.to_string()))?;
                if !check.converged {
                    return Err(CliError::Tolerance(format!(
                        "quadrature not converged at {}:{} (change {:e})",
                        f.x, f.y, check.delta
                    )));
                }
                Ok(p.map(|v| v.to_string()))
            })
            .collect()
    };
    let source = if exact { "exact" } else { "float" };
    let mut text = String::from(DENSITY_HEADER);
    text.push('\n');
    for (f, row) in faces.iter().zip(rows) {
        density_row(&mut text, *f, row?, source);
    }
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn kernel(n: usize, alpha: &Alpha, queries: &[[i64; 4]]) -> Result<(), CliError> {
    positive("n", n)?;
    let ni = n as i64;
    for q in queries {
        let bad_x = [q[0], q[2]].into_iter().any(|x| !(1..2 * ni).contains(&x));
        let bad_y = [q[1], q[3]].into_iter().any(|y| !(0..2 * ni).contains(&y));
        if bad_x || bad_y {
            return Err(CliError::Range(format!("query {q:?} outside columns 1..{} and heights 0..{}", 2 * ni - 1, 2 * ni - 1)));
        }
    }
    let range = |e: hexatile_exact::ExactError| CliError::Range(e.to_string());
    println!("x1,y1,x2,y2,exact,float");
    if n <= exact_n_limit() {
        let k = ExactKernel::new(n, alpha).map_err(range)?;
        for &[x1, y1, x2, y2] in queries {
            let v = k.kernel(x1, y1, x2, y2).map_err(range)?;
            println!("{x1},{y1},{x2},{y2},{},{}", formats::rational(&v), v.to_f64());
        }
    } else {
        let k = FloatKernel::with_defaults(n, alpha).map_err(range)?;
        for &[x1, y1, x2, y2] in queries {
            let v = k.kernel_checked(x1, y1, x2, y2).map_err(range)?;
            if !v.converged {
                return Err(CliError::Tolerance(format!("quadrature not converged (change {:e})", v.delta)));
            }
            println!("{x1},{y1},{x2},{y2},,{}", v.value);
        }
    }
    Ok(())
}

fn region(alpha: &Alpha, resolution: usize, out: &Path, heatmap: Option<usize>) -> Result<(), CliError> {
    if resolution < 2 {
        return Err(CliError::Range("--resolution must be at least 2".into()));
    }
    if heatmap == Some(0) {
        return Err(CliError::Range("--heatmap must be at least 1".into()));
    }
    let geo = arctic_geometry(alpha, resolution);
    fs::create_dir_all(out)?;
    let mut json = serde_json::to_string(&geo).expect("region serializes");
    json.push('\n');
    write(&out.join("region.json"), &json)?;
    write(&out.join("region.svg"), &svg::region_svg(&geo))?;
    if let Some(size) = heatmap {
        write(&out.join("heatmap.csv"), &formats::heatmap_csv(alpha, size))?;
    }
    eprintln!("{} boundary points in {} pieces", geo.point_count(), geo.boundary.len());
    Ok(())
}

fn run_verify(max_n: usize) -> Result<(), CliError> {
    if !(1..=verify::MAX_N).contains(&max_n) {
        return Err(CliError::Range(format!("--max-n must lie in 1..={}", verify::MAX_N)));
    }
    let checks = verify::run_suite(max_n);
    print!("{}", verify::table(&checks));
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if failed > 0 {
        return Err(CliError::Tolerance(format!("{failed} of {} checks failed", checks.len())));
    }
    println!("all {} checks passed", checks.len());
    Ok(())
}

fn render(input: &Path, out: &Path, overlay: Option<&Path>) -> Result<(), CliError> {
    let text = read(input)?;
    let (paths, _) = TilingFile::from_json(&text)?.decode()?;
    let overlay = match overlay {
        Some(p) => Some(
            serde_json::from_str::<Overlay>(&read(p)?)
                .map_err(|e| CliError::Format(format!("region JSON: {e}")))?,
        ),
        None => None,
    };
    write(out, &svg::tiling_svg(&tiling_from_paths(&paths), overlay.as_ref()))
}

