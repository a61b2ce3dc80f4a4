use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hexatile", version, about = "Random lozenge tilings of the hexagon with 2-periodic weights")]
pub struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw tilings; writes one JSON per sample and an aggregate density CSV.
    Sample {
        #[arg(long)]
        n: usize,
        /// Weight α in (0, 1], as `p/q` or a decimal.
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Float)]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Lozenge probabilities per face as CSV.
    Densities {
        #[arg(long)]
        n: usize,
        /// Weight α in (0, 1], as `p/q` or a decimal.
        #[arg(long)]
        alpha: String,
        /// `all`, or faces as `x:y` separated by commas.
        #[arg(long, default_value = "all")]
        faces: String,
        /// Exact rationals instead of quadrature.
        #[arg(long)]
        exact: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Correlation kernel values K_N(x1,y1,x2,y2).
    Kernel {
        #[arg(long)]
        n: usize,
        /// Weight α in (0, 1], as `p/q` or a decimal.
        #[arg(long)]
        alpha: String,
        /// `x1,y1,x2,y2`; may be repeated.
        #[arg(long, required = true, value_parser = parse_query)]
        query: Vec<[i64; 4]>,
    },
    /// Liquid region and arctic curve in scaled coordinates.
    Region {
        /// Weight α in (0, 1], as `p/q` or a decimal.
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        /// Directory for region.json and region.svg.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Also write a limiting-density heatmap CSV on a grid of this size.
        #[arg(long)]
        heatmap: Option<usize>,
    },
    /// Cross-check the kernel against the brute-force oracles.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Draw a tiling JSON as SVG.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Region JSON whose arctic curve is drawn on top.
        #[arg(long)]
        overlay: Option<PathBuf>,
    },
}

fn parse_query(s: &str) -> Result<[i64; 4], String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| format!("expected x1,y1,x2,y2, got {s:?}"))
}
