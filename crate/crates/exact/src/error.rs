use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("column {x} is outside 1..={max}")]
    ColumnRange { x: i64, max: i64 },
    #[error("face ({x}, {y}) is not an interior face")]
    FaceRange { x: i64, y: i64 },
    #[error("height {y} is outside 0..={max}")]
    HeightRange { y: i64, max: i64 },
    #[error("moment matrix of size {0} is singular")]
    Singular(usize),
    #[error("integrand at column {x} keeps a pole at -1 or -alpha")]
    Pole { x: i64 },
    #[error("quadrature needs a power of two of at least 64 nodes, got {0}")]
    Nodes(usize),
}
