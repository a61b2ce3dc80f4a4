use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle supports 1 <= N <= {max}, got {n}")]
    Size { n: usize, max: usize },
    #[error("singular Gram matrix")]
    Singular,
}
