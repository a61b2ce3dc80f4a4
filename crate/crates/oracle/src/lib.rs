//! Ground truth for tiny hexagons, built without orthogonal polynomials.
//!
//! [`enumerate`] lists every non-intersecting path system and its weight;
//! [`eynard_mehta_kernel`] builds the correlation kernel from products of
//! the transfer matrices and the inverse of their Gram matrix.

mod em;
mod enumerate;
mod error;
mod linalg;

pub use em::{eynard_mehta_kernel, transfer, EynardMehtaKernel};
pub use enumerate::{enumerate, EnumerationResult};
pub use error::OracleError;
pub use linalg::{determinant, inverse};

/// Largest N the oracle accepts.
pub const MAX_N: usize = 4;
