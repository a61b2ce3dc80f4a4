use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("hexagon size must be at least 1")]
    ZeroSize,
    #[error("alpha must lie in (0, 1], got {0}")]
    AlphaRange(String),
    #[error("cannot parse alpha from {0:?}")]
    AlphaParse(String),
    #[error("path system has {rows} rows and {cols} columns, expected {n} rows and {expected_cols} columns")]
    Shape { n: usize, rows: usize, cols: usize, expected_cols: usize },
    #[error("path {path} does not start at {expected}")]
    Start { path: usize, expected: i64 },
    #[error("path {path} does not end at {expected}")]
    End { path: usize, expected: i64 },
    #[error("path {path} takes an invalid step at column {column}")]
    Step { path: usize, column: usize },
    #[error("paths {lower} and {upper} touch at column {column}")]
    Crossing { lower: usize, upper: usize, column: usize },
    #[error("face ({x}, {y}) is outside the hexagon")]
    FaceRange { x: i64, y: i64 },
    #[error("tiling map is inconsistent at face ({x}, {y})")]
    Inconsistent { x: i64, y: i64 },
}
